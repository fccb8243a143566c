/**
 * The annotation page: instruction panel, centered video, progress bar and
 * the keyboard-driven rating slider (red-to-green gradient, labeled at the
 * extremes). Keyboard only: Space toggles playback, ArrowLeft/ArrowRight
 * step the rating once per keydown.
 */

import type { IngestResponse, SessionBundle } from "./api.js";
import { submitLog } from "./api.js";
import { DashboardEngine } from "./engine.js";

const FLASH_MS = 350;

export class Dashboard {
  readonly root: HTMLElement;
  readonly bundle: SessionBundle;
  engine: DashboardEngine | null = null;

  video!: HTMLVideoElement;
  slider!: HTMLElement;
  progressFill!: HTMLElement;
  statusLine!: HTMLElement;
  cells: HTMLElement[] = [];

  private identifierDone: boolean;
  private baseUrl: string;
  private submitted = false;

  constructor(root: HTMLElement, bundle: SessionBundle, baseUrl = "") {
    this.root = root;
    this.bundle = bundle;
    this.baseUrl = baseUrl;
    this.identifierDone = !bundle.identifier_prompt_enabled;
    this.render();
  }

  private render(): void {
    const b = this.bundle;
    this.root.innerHTML = "";
    this.root.classList.add("corae-dashboard");

    const instructions = document.createElement("section");
    instructions.className = "instructions";
    const text = document.createElement("p");
    text.textContent = b.instructions;
    const keys = document.createElement("p");
    keys.className = "keybindings";
    keys.textContent =
      "Space: play / pause. Left and Right arrows: move the rating one step.";
    instructions.append(text, keys);

    const stage = document.createElement("section");
    stage.className = "stage";
    this.video = document.createElement("video");
    this.video.className = "partner-video";
    this.video.preload = "auto";
    this.video.src = this.baseUrl + b.media_url;
    stage.append(this.video);

    const progress = document.createElement("div");
    progress.className = "progress";
    this.progressFill = document.createElement("div");
    this.progressFill.className = "progress-fill";
    progress.append(this.progressFill);

    this.slider = this.buildSlider();
    this.statusLine = document.createElement("p");
    this.statusLine.className = "status";
    this.statusLine.textContent = "Press Space to start playback.";

    this.root.append(instructions, stage, progress, this.slider, this.statusLine);

    if (!this.identifierDone) this.showIdentifierPrompt();

    this.video.addEventListener("loadedmetadata", () => this.start());
    this.video.addEventListener("timeupdate", () => this.onTimeUpdate());
    this.video.addEventListener("ended", () => this.onEnded());
    this.video.addEventListener("error", () => this.onMediaError());
    window.addEventListener("keydown", this.onKeyDown);
  }

  dispose(): void {
    window.removeEventListener("keydown", this.onKeyDown);
  }

  private buildSlider(): HTMLElement {
    const b = this.bundle;
    const wrap = document.createElement("section");
    wrap.className = "slider";
    const left = document.createElement("span");
    left.className = "label label-negative";
    left.textContent = b.scale.negative_label;
    const right = document.createElement("span");
    right.className = "label label-positive";
    right.textContent = b.scale.positive_label;

    const track = document.createElement("div");
    track.className = "slider-track";
    this.cells = [];
    for (let v = b.scale.min_value; v <= b.scale.max_value; v += b.scale.step) {
      const cell = document.createElement("div");
      cell.className = "tick";
      cell.dataset.value = String(v);
      if (v === b.scale.neutral_value) cell.classList.add("active");
      track.append(cell);
      this.cells.push(cell);
    }
    wrap.append(left, track, right);
    return wrap;
  }

  private showIdentifierPrompt(): void {
    const overlay = document.createElement("div");
    overlay.className = "identifier-prompt";
    const field = document.createElement("input");
    field.type = "text";
    field.placeholder = "Enter your identifier";
    const button = document.createElement("button");
    button.textContent = "Begin";
    button.addEventListener("click", () => {
      if (!field.value.trim()) return;
      if (this.engine) this.engine.participantId = field.value.trim();
      this.pendingIdentifier = field.value.trim();
      this.identifierDone = true;
      overlay.remove();
    });
    overlay.append(field, button);
    this.root.append(overlay);
  }

  private pendingIdentifier: string | null = null;

  /** Engine exists once media metadata (duration) is known. */
  start(): void {
    if (this.engine) return;
    this.engine = new DashboardEngine({
      scale: this.bundle.scale,
      loggingInterval: this.bundle.logging_interval,
      fps: this.bundle.fps,
      mediaDuration: this.video.duration,
      sessionToken: this.bundle.session_token,
      projectId: this.bundle.project_id,
    });
    this.engine.participantId = this.pendingIdentifier;
  }

  readonly onKeyDown = (event: KeyboardEvent): void => {
    if (event.key === " " || event.code === "Space") {
      event.preventDefault();
      this.togglePlayback();
    } else if (event.key === "ArrowRight") {
      event.preventDefault();
      this.step(1);
    } else if (event.key === "ArrowLeft") {
      event.preventDefault();
      this.step(-1);
    }
  };

  togglePlayback(): void {
    if (!this.engine || !this.identifierDone || this.engine.finished) return;
    if (this.engine.playing) this.engine.advance(this.video.currentTime);
    this.engine.toggle();
    if (this.engine.playing) {
      void Promise.resolve(this.video.play()).catch(() => undefined);
      this.statusLine.textContent = "";
    } else {
      try {
        this.video.pause();
      } catch {
        /* jsdom has no playback machinery */
      }
      this.statusLine.textContent = "Paused. Ratings are locked while paused.";
    }
  }

  step(direction: 1 | -1): void {
    if (!this.engine || !this.identifierDone) return;
    if (this.engine.playing) this.engine.advance(this.video.currentTime);
    const result = this.engine.adjust(direction);
    if (result.kind === "changed") {
      this.paintRating();
    } else if (result.reason === "bound") {
      this.flash("bound-flash");
    } else if (result.reason === "paused") {
      this.flash("paused-flash");
      this.statusLine.textContent = "Ratings can only change during playback.";
    }
  }

  private flash(cls: string): void {
    this.slider.classList.add(cls);
    setTimeout(() => this.slider.classList.remove(cls), FLASH_MS);
  }

  paintRating(): void {
    if (!this.engine) return;
    for (const cell of this.cells) {
      cell.classList.toggle(
        "active", Number(cell.dataset.value) === this.engine.rating,
      );
    }
  }

  get displayedRating(): number | null {
    const active = this.cells.find((c) => c.classList.contains("active"));
    return active ? Number(active.dataset.value) : null;
  }

  onTimeUpdate(): void {
    if (!this.engine) return;
    this.engine.advance(this.video.currentTime);
    const fraction = this.video.duration
      ? Math.min(1, this.video.currentTime / this.video.duration)
      : 0;
    this.progressFill.style.width = `${(fraction * 100).toFixed(2)}%`;
  }

  onEnded(): void {
    if (!this.engine || this.submitted) return;
    this.engine.finish();
    this.submitted = true;
    void this.submit();
  }

  onMediaError(): void {
    this.statusLine.textContent = "The video failed to load.";
    const retry = document.createElement("button");
    retry.className = "retry";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => {
      retry.remove();
      this.video.load();
    });
    this.root.append(retry);
  }

  async submit(): Promise<void> {
    if (!this.engine) return;
    const body = this.engine.serialize();
    this.offerDownload(body);
    try {
      const report = await submitLog(this.baseUrl, this.engine.sessionToken, body);
      this.showReport(report);
    } catch {
      this.statusLine.textContent =
        "Upload failed. Your annotation file is available below; please retry.";
      const retry = document.createElement("button");
      retry.className = "retry-upload";
      retry.textContent = "Retry upload";
      retry.addEventListener("click", () => {
        retry.remove();
        this.submitted = true;
        void this.submit();
      });
      this.root.append(retry);
    }
  }

  private offerDownload(body: string): void {
    const existing = this.root.querySelector("a.download");
    if (existing) existing.remove();
    const link = document.createElement("a");
    link.className = "download";
    link.download = `${this.bundle.project_id}_${this.bundle.session_token}.corae.json`;
    if (typeof URL.createObjectURL === "function") {
      link.href = URL.createObjectURL(new Blob([body], { type: "application/json" }));
    }
    link.textContent = "Download your annotation file";
    this.root.append(link);
  }

  private showReport(report: IngestResponse): void {
    const panel = document.createElement("section");
    panel.className = "report";
    if (report.accepted) {
      panel.textContent = "Annotation received. Thank you!";
    } else {
      const lines = (report.violations ?? []).map(
        (v) => `${v.kind} at event ${v.index}: ${v.detail}`,
      );
      panel.textContent =
        report.error ?? `Submission rejected:\n${lines.join("\n")}`;
    }
    this.root.append(panel);
  }
}
