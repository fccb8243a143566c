/**
 * Frame-accurate time handling, matching the backend's conversion bit for
 * bit: a media position in seconds maps to the frame floor(t * fps), with a
 * 1e-9 snap absorbing float rounding at frame boundaries.
 */

export const BOUNDARY_EPS = 1e-9;

export function secondsToFrame(seconds: number, fps: number): number {
  if (seconds < 0) throw new RangeError(`negative media position: ${seconds}`);
  return Math.floor(seconds * fps + BOUNDARY_EPS);
}

export function frameToSeconds(frame: number, fps: number): number {
  const whole = Math.floor(frame / fps);
  return whole + (frame - whole * fps) / fps;
}

function pad(value: number, width: number): string {
  return String(value).padStart(width, "0");
}

/** `HH:MM:SS:FF`; the frame field widens past two digits above 100 fps. */
export function frameToTimecode(frame: number, fps: number): string {
  const frameField = frame % fps;
  const whole = Math.floor(frame / fps);
  const seconds = whole % 60;
  const minutes = Math.floor(whole / 60) % 60;
  const hours = Math.floor(whole / 3600);
  const width = Math.max(2, String(fps - 1).length);
  return `${pad(hours, 2)}:${pad(minutes, 2)}:${pad(seconds, 2)}:${pad(frameField, width)}`;
}
