/**
 * Client-side annotation session state machine.
 *
 * Mirrors the server-side contract: the rating starts neutral at timecode
 * zero, moves only during playback and only one scale step at a time, stays
 * inside the scale bounds, and the current value is re-logged at every
 * logging-interval boundary crossed during playback. The server replays
 * submitted logs against the same rules, so any divergence here surfaces as
 * a rejected submission.
 */

import type { CanonicalLog, LogEvent, ScaleDescriptor } from "./api.js";
import { BOUNDARY_EPS, frameToSeconds, frameToTimecode, secondsToFrame } from "./timecode.js";

export type AdjustResult =
  | { kind: "changed"; event: LogEvent }
  | { kind: "rejected"; reason: "paused" | "bound" | "finished" };

export interface EngineConfig {
  scale: ScaleDescriptor;
  loggingInterval: number;
  fps: number;
  mediaDuration: number;
  sessionToken: string;
  projectId: string;
}

export class DashboardEngine {
  readonly scale: ScaleDescriptor;
  readonly fps: number;
  readonly loggingInterval: number;
  readonly mediaDuration: number;
  readonly sessionToken: string;
  readonly projectId: string;
  readonly events: LogEvent[] = [];

  participantId: string | null = null;
  rating: number;
  playing = false;
  finished = false;

  private currentFrame = 0;
  private readonly endFrame: number;

  constructor(config: EngineConfig) {
    this.scale = config.scale;
    this.fps = config.fps;
    this.loggingInterval = config.loggingInterval;
    this.mediaDuration = config.mediaDuration;
    this.sessionToken = config.sessionToken;
    this.projectId = config.projectId;
    this.rating = config.scale.neutral_value;
    this.endFrame = secondsToFrame(config.mediaDuration, config.fps);
    this.emit("interval_tick", 0);
  }

  get positionSeconds(): number {
    return frameToSeconds(this.currentFrame, this.fps);
  }

  get positionFrame(): number {
    return this.currentFrame;
  }

  private admissible(value: number): boolean {
    return (
      value >= this.scale.min_value &&
      value <= this.scale.max_value &&
      (value - this.scale.min_value) % this.scale.step === 0
    );
  }

  private emit(cause: LogEvent["cause"], frame: number): LogEvent {
    const event: LogEvent = {
      rating: this.rating,
      timecode: frameToTimecode(frame, this.fps),
      cause,
      wall_clock: null,
    };
    this.events.push(event);
    return event;
  }

  /** Space: flip play/pause. No-op once the session is finished. */
  toggle(): LogEvent | null {
    if (this.finished) return null;
    this.playing = !this.playing;
    return this.emit("playback_toggle", this.currentFrame);
  }

  /** Arrow keys: move the rating one step. */
  adjust(direction: 1 | -1): AdjustResult {
    if (this.finished) return { kind: "rejected", reason: "finished" };
    if (!this.playing) return { kind: "rejected", reason: "paused" };
    const target = this.rating + direction * this.scale.step;
    if (!this.admissible(target)) return { kind: "rejected", reason: "bound" };
    this.rating = target;
    return { kind: "changed", event: this.emit("rating_change", this.currentFrame) };
  }

  /**
   * Follow the media position, logging a tick at every interval boundary
   * crossed. Player jitter (a position behind the last seen frame, or
   * updates while paused) is ignored rather than logged out of order.
   */
  advance(positionSeconds: number): LogEvent[] {
    if (!this.playing || this.finished) return [];
    const newFrame = Math.min(secondsToFrame(positionSeconds, this.fps), this.endFrame);
    if (newFrame < this.currentFrame) return [];

    const oldSeconds = frameToSeconds(this.currentFrame, this.fps);
    const newSeconds = Math.min(frameToSeconds(newFrame, this.fps), this.mediaDuration);
    const emitted: LogEvent[] = [];
    let k = Math.floor(oldSeconds / this.loggingInterval + BOUNDARY_EPS) + 1;
    while (k * this.loggingInterval <= newSeconds + BOUNDARY_EPS) {
      const boundary = Math.min(k * this.loggingInterval, this.mediaDuration);
      emitted.push(this.emit("interval_tick", secondsToFrame(boundary, this.fps)));
      k += 1;
    }

    this.currentFrame = newFrame;
    if (newFrame >= this.endFrame) {
      this.finished = true;
      this.playing = false;
    }
    return emitted;
  }

  /** Jump straight to the end of the media (the player fired `ended`). */
  finish(): void {
    if (this.finished) return;
    if (!this.playing) this.playing = true;
    this.advance(this.mediaDuration);
  }

  toLog(): CanonicalLog {
    return {
      format_version: "1",
      session_token: this.sessionToken,
      participant_id: this.participantId,
      project_id: this.projectId,
      scale: this.scale,
      logging_interval: this.loggingInterval,
      fps: this.fps,
      media_duration: this.mediaDuration,
      events: [...this.events],
    };
  }

  serialize(): string {
    return JSON.stringify(this.toLog(), null, 2) + "\n";
  }
}
