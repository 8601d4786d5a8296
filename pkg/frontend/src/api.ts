import type { DocData, ImageEntry, PutResult, UiConfig } from "./types.js";

/** Thin client for the annotation service HTTP API. */
export class ApiClient {
  constructor(private base: string = "") {}

  async listImages(): Promise<ImageEntry[]> {
    return this.getJson("/api/images");
  }

  async getConfig(): Promise<UiConfig> {
    return this.getJson("/api/config");
  }

  async getAnnotations(imageId: string): Promise<{ doc: DocData; version: number }> {
    return this.getJson(`/api/images/${encodeURIComponent(imageId)}/annotations`);
  }

  async putAnnotations(
    imageId: string, doc: DocData, expectedVersion: number,
  ): Promise<PutResult> {
    const resp = await fetch(
      `${this.base}/api/images/${encodeURIComponent(imageId)}/annotations`,
      {
        method: "PUT",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ doc, expected_version: expectedVersion }),
      },
    );
    if (resp.ok) {
      const body = await resp.json();
      return { ok: true, version: body.version };
    }
    return {
      ok: false,
      conflict: resp.status === 409,
      detail: await resp.text(),
    };
  }

  imageUrl(imageId: string): string {
    return `${this.base}/api/images/${encodeURIComponent(imageId)}/file`;
  }

  private async getJson(path: string): Promise<any> {
    const resp = await fetch(this.base + path);
    if (!resp.ok) {
      throw new Error(`${path}: HTTP ${resp.status}`);
    }
    return resp.json();
  }
}
