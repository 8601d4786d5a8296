import { normalizeDrag, rectArea, rectSubtract, rectUnion } from "./geometry.js";
import type { AnnotationData, DocData, Mode, PutResult, UiConfig } from "./types.js";

/** Effects keyCommand asks the shell to perform. */
export type SessionEffect =
  | { kind: "none" }
  | { kind: "save" }
  | { kind: "mode-changed"; mode: Mode }
  | { kind: "draft-changed" }
  | { kind: "selection-changed" };

const RESERVED_CLASS = 0;

function snapshot(doc: DocData): string {
  return JSON.stringify(doc);
}

function cloneDoc(doc: DocData): DocData {
  return JSON.parse(JSON.stringify(doc));
}

/**
 * All UI state for one image: the draft document, selection, mode, and the
 * version the draft was loaded from.  Pure state machine; network and
 * rendering live in the shell.
 */
export class UiSession {
  doc: DocData;
  mode: Mode = "label";
  selected: number | null = null;
  expectedVersion = 0;
  conflict = false;
  armedClass: number | null = null;
  lastUsedClass = 1;

  private savedSnapshot: string;

  constructor(private config: UiConfig, doc: DocData, version: number) {
    this.doc = cloneDoc(doc);
    this.expectedVersion = version;
    this.savedSnapshot = snapshot(this.doc);
  }

  get dirty(): boolean {
    return snapshot(this.doc) !== this.savedSnapshot;
  }

  get selectedAnnotation(): AnnotationData | null {
    return this.selected === null ? null : this.doc.annotations[this.selected];
  }

  /** Create an annotation from a drag in image coordinates, any direction. */
  dragCreate(x1: number, y1: number, x2: number, y2: number): boolean {
    if (this.mode !== "label") return false;
    const rect = normalizeDrag(x1, y1, x2, y2);
    if (rect === null) return false;
    const cls = this.armedClass ?? this.lastUsedClass;
    this.doc.annotations.push({
      ...rect,
      class: cls,
      transcription: null,
      comment: null,
    });
    this.lastUsedClass = cls;
    this.selected = this.doc.annotations.length - 1;
    return true;
  }

  /** Dispatch one key press per the configured bindings. */
  keyCommand(key: string): SessionEffect {
    const bound = this.config.key_bindings[key];
    if (bound !== undefined && bound !== RESERVED_CLASS) {
      this.armedClass = bound;
      if (this.selected !== null) {
        this.doc.annotations[this.selected].class = bound;
        this.lastUsedClass = bound;
        return { kind: "draft-changed" };
      }
      this.lastUsedClass = bound;
      return { kind: "none" };
    }
    switch (key) {
      case "Tab":
      case "ArrowDown":
        this.cycleSelection(1);
        return { kind: "selection-changed" };
      case "ArrowUp":
        this.cycleSelection(-1);
        return { kind: "selection-changed" };
      case "Delete":
      case "Backspace":
        return this.deleteSelected()
          ? { kind: "draft-changed" }
          : { kind: "none" };
      case "Escape":
        this.selected = null;
        this.armedClass = null;
        return { kind: "selection-changed" };
      case "m":
        this.mode = this.mode === "label" ? "transcribe" : "label";
        this.selected = null;
        return { kind: "mode-changed", mode: this.mode };
      case "s":
        return { kind: "save" };
      default:
        return { kind: "none" };
    }
  }

  cycleSelection(step: number): void {
    const n = this.doc.annotations.length;
    if (n === 0) {
      this.selected = null;
      return;
    }
    if (this.selected === null) {
      this.selected = step > 0 ? 0 : n - 1;
    } else {
      this.selected = (this.selected + step + n) % n;
    }
  }

  deleteSelected(): boolean {
    if (this.selected === null) return false;
    this.doc.annotations.splice(this.selected, 1);
    if (this.doc.annotations.length === 0) {
      this.selected = null;
    } else if (this.selected >= this.doc.annotations.length) {
      this.selected = this.doc.annotations.length - 1;
    }
    return true;
  }

  setTranscription(index: number, text: string | null): void {
    this.doc.annotations[index].transcription = text;
  }

  setComment(index: number, text: string | null): void {
    this.doc.annotations[index].comment = text;
  }

  setClass(index: number, cls: number): void {
    if (cls !== RESERVED_CLASS) {
      this.doc.annotations[index].class = cls;
      this.lastUsedClass = cls;
    }
  }

  /** Replace the selection with the bounding-box union of it and another. */
  unionWith(otherIndex: number): boolean {
    if (this.selected === null || otherIndex === this.selected) return false;
    const a = this.doc.annotations[this.selected];
    const b = this.doc.annotations[otherIndex];
    const merged = rectUnion(a, b);
    Object.assign(a, merged);
    this.doc.annotations.splice(otherIndex, 1);
    this.selected = this.doc.annotations.indexOf(a);
    return true;
  }

  /**
   * Cut another rect out of the selection; the selection keeps the largest
   * remaining piece (interactive trim) and vanishes when fully covered.
   */
  subtractFrom(otherIndex: number): boolean {
    if (this.selected === null || otherIndex === this.selected) return false;
    const a = this.doc.annotations[this.selected];
    const b = this.doc.annotations[otherIndex];
    const pieces = rectSubtract(a, b);
    if (pieces.length === 0) {
      return this.deleteSelected();
    }
    pieces.sort((p, q) => rectArea(q) - rectArea(p));
    Object.assign(a, pieces[0]);
    return true;
  }

  /** Mark the draft as persisted at the given version. */
  applySaveResult(result: PutResult): void {
    if (result.ok) {
      this.expectedVersion = result.version;
      this.savedSnapshot = snapshot(this.doc);
      this.conflict = false;
    } else if (result.conflict) {
      // Keep the draft untouched; the shell shows a conflict banner.
      this.conflict = true;
    }
  }

  /** Load a fresh doc (e.g. after reload); draft and dirty state reset. */
  loadDoc(doc: DocData, version: number): void {
    this.doc = cloneDoc(doc);
    this.expectedVersion = version;
    this.savedSnapshot = snapshot(this.doc);
    this.selected = null;
    this.conflict = false;
  }
}
