import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { UiSession } from "../src/session.js";
import type { DocData, UiConfig } from "../src/types.js";

const CONFIG: UiConfig = {
  labels: [
    "NoClass", "Ignore", "Img:CalibrationCard", "Img:Seal", "Img:WritableArea",
    "Wr:OldText", "Wr:OldNote", "Wr:NewText", "Wr:NewOther", "WrO:Ornament",
    "WrO:Fold",
  ],
  key_bindings: { "1": 1, "5": 5 },
  preferences: {},
};

/**
 * In-memory stand-in for the annotation service: stores one doc per image
 * and enforces the same optimistic-versioning contract (save succeeds only
 * when expected_version matches, otherwise 409).
 */
class FakeServer {
  private docs = new Map<string, { doc: DocData; version: number }>();

  handle(url: string, init?: RequestInit): Response {
    const match = url.match(/\/api\/images\/([^/]+)\/annotations$/);
    if (!match) return new Response("not found", { status: 404 });
    const imageId = decodeURIComponent(match[1]);

    if (!init || init.method === undefined || init.method === "GET") {
      const entry = this.docs.get(imageId);
      if (entry) return Response.json(entry);
      return Response.json({
        doc: {
          schema_version: 1, image_id: imageId,
          width: 800, height: 600, annotations: [],
        },
        version: 0,
      });
    }

    if (init.method === "PUT") {
      const body = JSON.parse(init.body as string);
      const current = this.docs.get(imageId)?.version ?? 0;
      if (body.expected_version !== current) {
        return new Response(
          JSON.stringify({ detail: "version conflict" }), { status: 409 });
      }
      const next = current + 1;
      this.docs.set(imageId, { doc: body.doc, version: next });
      return Response.json({ version: next });
    }
    return new Response("method not allowed", { status: 405 });
  }
}

let server: FakeServer;

beforeEach(() => {
  server = new FakeServer();
  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) =>
    server.handle(url, init));
});

afterEach(() => {
  vi.unstubAllGlobals();
});

async function loadSession(api: ApiClient, imageId: string): Promise<UiSession> {
  const { doc, version } = await api.getAnnotations(imageId);
  return new UiSession(CONFIG, doc, version);
}

describe("save and reload round trip", () => {
  it("reproduces the draft exactly, regardless of drag direction", async () => {
    const api = new ApiClient();
    const session = await loadSession(api, "charter_0001.jpg");

    session.keyCommand("5");
    // Same rect drawn via two opposite diagonals.
    session.dragCreate(40, 50, 100, 90);
    session.keyCommand("Escape");
    session.dragCreate(300, 240, 200, 160);
    session.setTranscription(0, "In nomine domini");

    const draft = JSON.parse(JSON.stringify(session.doc));
    const result = await api.putAnnotations(
      "charter_0001.jpg", session.doc, session.expectedVersion);
    session.applySaveResult(result);
    expect(session.dirty).toBe(false);
    expect(session.expectedVersion).toBe(1);

    const reloaded = await loadSession(api, "charter_0001.jpg");
    expect(reloaded.doc).toEqual(draft);
    expect(reloaded.expectedVersion).toBe(1);
    expect(reloaded.doc.annotations[1]).toMatchObject(
      { left: 200, top: 160, right: 300, bottom: 240 });
  });

  it("keeps images independent", async () => {
    const api = new ApiClient();
    const a = await loadSession(api, "a.png");
    a.dragCreate(0, 0, 50, 50);
    a.applySaveResult(await api.putAnnotations("a.png", a.doc, 0));

    const b = await loadSession(api, "b.png");
    expect(b.doc.annotations).toHaveLength(0);
    expect(b.expectedVersion).toBe(0);
  });
});

describe("stale save", () => {
  it("reports a conflict and loses no data", async () => {
    const api = new ApiClient();
    // Two sessions open the same image at version 0.
    const first = await loadSession(api, "charter_0001.jpg");
    const second = await loadSession(api, "charter_0001.jpg");

    first.dragCreate(0, 0, 50, 50);
    first.applySaveResult(await api.putAnnotations(
      "charter_0001.jpg", first.doc, first.expectedVersion));
    expect(first.expectedVersion).toBe(1);

    second.dragCreate(100, 100, 200, 200);
    second.setTranscription(0, "do not lose me");
    const draft = JSON.parse(JSON.stringify(second.doc));
    const result = await api.putAnnotations(
      "charter_0001.jpg", second.doc, second.expectedVersion);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.conflict).toBe(true);

    second.applySaveResult(result);
    expect(second.conflict).toBe(true);
    expect(second.doc).toEqual(draft);
    expect(second.dirty).toBe(true);

    // The server still holds the first writer's version.
    const { doc, version } = await api.getAnnotations("charter_0001.jpg");
    expect(version).toBe(1);
    expect(doc.annotations).toHaveLength(1);
    expect(doc.annotations[0]).toMatchObject(
      { left: 0, top: 0, right: 50, bottom: 50 });

    // After reloading, a retry with the fresh version succeeds.
    second.loadDoc(doc, version);
    second.dragCreate(100, 100, 200, 200);
    const retry = await api.putAnnotations(
      "charter_0001.jpg", second.doc, second.expectedVersion);
    expect(retry.ok).toBe(true);
    second.applySaveResult(retry);
    expect(second.expectedVersion).toBe(2);
    expect(second.conflict).toBe(false);
  });
});
