// Client tests with a mocked fetch; no server is contacted.

import { describe, expect, it, vi } from "vitest";

import { ApiError, EngineClient } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("EngineClient", () => {
  it("creates sessions and submits intentions", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValueOnce(jsonResponse({ id: "7" }))
      .mockResolvedValueOnce(jsonResponse({ cube: {}, models: [] }));
    const client = new EngineClient("http://engine", fetchMock);

    const sid = await client.createSession();
    expect(sid).toBe("7");
    expect(fetchMock).toHaveBeenCalledWith("http://engine/sessions", {
      method: "POST",
    });

    await client.submitIntention(sid, "with CO describe HoursPerWeek");
    const [url, init] = fetchMock.mock.calls[1];
    expect(url).toBe("http://engine/sessions/7/intentions");
    expect(JSON.parse(init.body)).toEqual({
      text: "with CO describe HoursPerWeek",
    });
  });

  it("composeAndSubmit builds the statement text", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({}));
    const client = new EngineClient("http://engine", fetchMock);
    await client.composeAndSubmit("7", {
      target: "CO",
      operator: "describe",
      args: "HoursPerWeek by work_class.L0",
    });
    const [, init] = fetchMock.mock.calls[0];
    expect(JSON.parse(init.body).text).toBe(
      "with CO describe HoursPerWeek by work_class.L0",
    );
  });

  it("fetches the dashboard and catalog", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValueOnce(jsonResponse([{ provenance: {} }]))
      .mockResolvedValueOnce(jsonResponse({ cubes: ["CN"] }));
    const client = new EngineClient("http://engine", fetchMock);
    expect(await client.getDashboard("7")).toHaveLength(1);
    expect((await client.getCatalog()).cubes).toEqual(["CN"]);
    expect(fetchMock.mock.calls.map((c) => c[0])).toEqual([
      "http://engine/sessions/7/dashboard",
      "http://engine/catalog",
    ]);
  });

  it("surfaces structured engine errors", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ stage: "parse", message: "expected )", position: 17 }, 400),
    );
    const client = new EngineClient("http://engine", fetchMock);
    const err = await client
      .submitIntention("7", "with CO describe (")
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.detail.stage).toBe("parse");
    expect(err.detail.position).toBe(17);
  });
});
