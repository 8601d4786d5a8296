export interface RectData {
  left: number;
  top: number;
  right: number;
  bottom: number;
}

export interface AnnotationData extends RectData {
  class: number;
  transcription: string | null;
  comment: string | null;
  [extra: string]: unknown;
}

export interface DocData {
  schema_version: number;
  image_id: string;
  width: number;
  height: number;
  annotations: AnnotationData[];
  [extra: string]: unknown;
}

export interface ImageEntry {
  image_id: string;
  width: number;
  height: number;
  annotated: boolean;
  decode_error: boolean;
}

export interface UiConfig {
  labels: string[];
  key_bindings: Record<string, number>;
  preferences: Record<string, unknown>;
}

export type Mode = "label" | "transcribe";

export type PutResult =
  | { ok: true; version: number }
  | { ok: false; conflict: boolean; detail: string };
