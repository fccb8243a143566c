/** Types for the backend HTTP API and the canonical log document. */

export interface ScaleDescriptor {
  min_value: number;
  max_value: number;
  step: number;
  neutral_value: number;
  negative_label: string;
  positive_label: string;
}

export interface SessionBundle {
  session_token: string;
  project_id: string;
  participant_slot: string;
  instructions: string;
  scale: ScaleDescriptor;
  logging_interval: number;
  fps: number;
  identifier_prompt_enabled: boolean;
  media_url: string;
}

export type EventCause = "interval_tick" | "rating_change" | "playback_toggle";

export interface LogEvent {
  rating: number;
  timecode: string;
  cause: EventCause;
  wall_clock: number | null;
}

export interface CanonicalLog {
  format_version: "1";
  session_token: string;
  participant_id: string | null;
  project_id: string;
  scale: ScaleDescriptor;
  logging_interval: number;
  fps: number;
  media_duration: number;
  events: LogEvent[];
}

export interface IngestResponse {
  accepted: boolean;
  ok?: boolean;
  fatal?: boolean;
  violations?: { kind: string; index: number; detail: string }[];
  error?: string;
}

export async function fetchBundle(baseUrl: string, token: string): Promise<SessionBundle> {
  const resp = await fetch(`${baseUrl}/api/v1/session/${token}`);
  if (!resp.ok) throw new Error(`session lookup failed: HTTP ${resp.status}`);
  return (await resp.json()) as SessionBundle;
}

export async function submitLog(
  baseUrl: string,
  token: string,
  body: string,
): Promise<IngestResponse> {
  const resp = await fetch(`${baseUrl}/api/v1/session/${token}/log`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body,
  });
  return (await resp.json()) as IngestResponse;
}
