import { ApiClient } from "./api.js";
import { UiSession } from "./session.js";
import type { DocData, ImageEntry, UiConfig } from "./types.js";

const CLASS_COLORS = [
  "#888888", "#b0b0b0", "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf",
];

class App {
  private api = new ApiClient();
  private config!: UiConfig;
  private images: ImageEntry[] = [];
  private session: UiSession | null = null;
  private currentImage: ImageEntry | null = null;
  private bitmap: HTMLImageElement | null = null;

  private canvas = document.getElementById("canvas") as HTMLCanvasElement;
  private listEl = document.getElementById("image-list") as HTMLElement;
  private rowsEl = document.getElementById("transcribe-rows") as HTMLElement;
  private statusEl = document.getElementById("status") as HTMLElement;
  private bannerEl = document.getElementById("banner") as HTMLElement;

  private scale = 1;
  private panX = 0;
  private panY = 0;
  private dragStart: { x: number; y: number } | null = null;
  private dragNow: { x: number; y: number } | null = null;
  private saving = false;

  async start(): Promise<void> {
    this.config = await this.api.getConfig();
    this.images = await this.api.listImages();
    this.renderImageList();
    this.bindEvents();
    const first = this.images.find((i) => !i.decode_error);
    if (first) await this.openImage(first);
  }

  private renderImageList(): void {
    this.listEl.innerHTML = "";
    for (const entry of this.images) {
      const item = document.createElement("li");
      item.textContent = `${entry.annotated ? "✓ " : ""}${entry.image_id}`;
      item.className = entry.image_id === this.currentImage?.image_id ? "active" : "";
      if (entry.decode_error) item.classList.add("broken");
      item.onclick = () => void this.openImage(entry);
      this.listEl.appendChild(item);
    }
  }

  private async openImage(entry: ImageEntry): Promise<void> {
    if (this.session?.dirty &&
        !window.confirm("Discard unsaved changes?")) {
      return;
    }
    const { doc, version } = await this.api.getAnnotations(entry.image_id);
    this.currentImage = entry;
    this.session = new UiSession(this.config, doc, version);
    this.bitmap = new Image();
    this.bitmap.onload = () => {
      this.fitToWindow();
      this.redraw();
    };
    this.bitmap.src = this.api.imageUrl(entry.image_id);
    this.renderImageList();
    this.updateStatus();
  }

  private fitToWindow(): void {
    if (!this.bitmap) return;
    const maxW = this.canvas.clientWidth || 900;
    const maxH = this.canvas.clientHeight || 700;
    this.canvas.width = maxW;
    this.canvas.height = maxH;
    this.scale = Math.min(maxW / this.bitmap.width, maxH / this.bitmap.height, 1);
    this.panX = 0;
    this.panY = 0;
  }

  private toImage(clientX: number, clientY: number): { x: number; y: number } {
    const rect = this.canvas.getBoundingClientRect();
    return {
      x: (clientX - rect.left - this.panX) / this.scale,
      y: (clientY - rect.top - this.panY) / this.scale,
    };
  }

  private bindEvents(): void {
    this.canvas.addEventListener("mousedown", (ev) => {
      if (this.session?.mode !== "label") return;
      this.dragStart = this.toImage(ev.clientX, ev.clientY);
      this.dragNow = this.dragStart;
    });
    this.canvas.addEventListener("mousemove", (ev) => {
      if (!this.dragStart) return;
      this.dragNow = this.toImage(ev.clientX, ev.clientY);
      this.redraw();
    });
    this.canvas.addEventListener("mouseup", (ev) => {
      if (!this.dragStart || !this.session) return;
      const end = this.toImage(ev.clientX, ev.clientY);
      this.session.dragCreate(this.dragStart.x, this.dragStart.y, end.x, end.y);
      this.dragStart = null;
      this.dragNow = null;
      this.redraw();
      this.updateStatus();
    });
    this.canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = ev.deltaY < 0 ? 1.1 : 1 / 1.1;
      this.scale *= factor;
      this.redraw();
    });
    window.addEventListener("keydown", (ev) => {
      if (!this.session) return;
      const target = ev.target as HTMLElement;
      if (target.tagName === "INPUT" || target.tagName === "TEXTAREA") return;
      const effect = this.session.keyCommand(ev.key);
      if (effect.kind === "save") {
        void this.save();
      } else if (effect.kind === "mode-changed") {
        this.switchMode();
      }
      this.redraw();
      this.updateStatus();
    });
  }

  private async save(): Promise<void> {
    if (!this.session || !this.currentImage || this.saving) return;
    this.saving = true;
    try {
      const result = await this.api.putAnnotations(
        this.currentImage.image_id, this.session.doc,
        this.session.expectedVersion);
      this.session.applySaveResult(result);
      if (!result.ok && result.conflict) {
        this.showBanner("Version conflict: someone else saved this image. " +
          "Your draft is preserved.");
      } else if (result.ok) {
        this.currentImage.annotated = true;
        this.renderImageList();
        this.showBanner("Saved.", 1200);
      }
    } finally {
      this.saving = false;
      this.updateStatus();
    }
  }

  private switchMode(): void {
    const transcribePane = document.getElementById("transcribe")!;
    const labelPane = document.getElementById("label")!;
    if (this.session?.mode === "transcribe") {
      transcribePane.style.display = "block";
      labelPane.style.display = "none";
      this.renderTranscribeRows();
    } else {
      transcribePane.style.display = "none";
      labelPane.style.display = "block";
      this.redraw();
    }
  }

  /** One row per annotation: crop thumbnail, class, transcription, comment. */
  private renderTranscribeRows(): void {
    this.rowsEl.innerHTML = "";
    if (!this.session || !this.bitmap) return;
    this.session.doc.annotations.forEach((ann, idx) => {
      const row = document.createElement("div");
      row.className = "transcribe-row";

      // The crop shows only the rect's pixels, no surrounding context.
      const thumb = document.createElement("canvas");
      const w = Math.max(1, ann.right - ann.left);
      const h = Math.max(1, ann.bottom - ann.top);
      const tScale = Math.min(240 / w, 120 / h, 1);
      thumb.width = Math.round(w * tScale);
      thumb.height = Math.round(h * tScale);
      thumb.getContext("2d")!.drawImage(
        this.bitmap!, ann.left, ann.top, w, h,
        0, 0, thumb.width, thumb.height);
      row.appendChild(thumb);

      const select = document.createElement("select");
      this.config.labels.forEach((label, cls) => {
        if (cls === 0) return;
        const opt = document.createElement("option");
        opt.value = String(cls);
        opt.textContent = label;
        opt.selected = cls === ann.class;
        select.appendChild(opt);
      });
      select.onchange = () => {
        this.session!.setClass(idx, Number(select.value));
        this.updateStatus();
      };
      row.appendChild(select);

      const transcription = document.createElement("input");
      transcription.placeholder = "transcription";
      transcription.value = ann.transcription ?? "";
      transcription.oninput = () => {
        this.session!.setTranscription(idx, transcription.value || null);
        this.updateStatus();
      };
      row.appendChild(transcription);

      const comment = document.createElement("input");
      comment.placeholder = "comment";
      comment.value = ann.comment ?? "";
      comment.oninput = () => {
        this.session!.setComment(idx, comment.value || null);
        this.updateStatus();
      };
      row.appendChild(comment);

      this.rowsEl.appendChild(row);
    });
  }

  private redraw(): void {
    const ctx = this.canvas.getContext("2d")!;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    if (!this.bitmap || !this.session) return;
    ctx.save();
    ctx.translate(this.panX, this.panY);
    ctx.scale(this.scale, this.scale);
    ctx.drawImage(this.bitmap, 0, 0);
    this.session.doc.annotations.forEach((ann, idx) => {
      ctx.strokeStyle = CLASS_COLORS[ann.class] ?? "#000";
      ctx.lineWidth = (idx === this.session!.selected ? 4 : 2) / this.scale;
      ctx.strokeRect(ann.left, ann.top, ann.right - ann.left,
                     ann.bottom - ann.top);
      ctx.font = `${14 / this.scale}px sans-serif`;
      ctx.fillStyle = ctx.strokeStyle;
      ctx.fillText(this.config.labels[ann.class] ?? String(ann.class),
                   ann.left, Math.max(12 / this.scale, ann.top - 4 / this.scale));
    });
    if (this.dragStart && this.dragNow) {
      ctx.strokeStyle = "#000";
      ctx.setLineDash([6 / this.scale]);
      ctx.strokeRect(this.dragStart.x, this.dragStart.y,
                     this.dragNow.x - this.dragStart.x,
                     this.dragNow.y - this.dragStart.y);
      ctx.setLineDash([]);
    }
    ctx.restore();
  }

  private updateStatus(): void {
    if (!this.session) {
      this.statusEl.textContent = "no image";
      return;
    }
    const parts = [
      `mode: ${this.session.mode}`,
      `annotations: ${this.session.doc.annotations.length}`,
      `version: ${this.session.expectedVersion}`,
    ];
    if (this.session.armedClass !== null) {
      parts.push(`armed: ${this.config.labels[this.session.armedClass]}`);
    }
    if (this.session.dirty) parts.push("● unsaved");
    this.statusEl.textContent = parts.join("  |  ");
  }

  private showBanner(text: string, timeoutMs?: number): void {
    this.bannerEl.textContent = text;
    this.bannerEl.style.display = "block";
    if (timeoutMs) {
      window.setTimeout(() => {
        this.bannerEl.style.display = "none";
      }, timeoutMs);
    }
  }
}

new App().start().catch((err) => {
  document.getElementById("banner")!.textContent = String(err);
  document.getElementById("banner")!.style.display = "block";
});

export type { DocData };
