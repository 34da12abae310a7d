import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError, type SearchResponse } from "../src/api";
import { createMockServer, type MockServer } from "../mock/server.mjs";

let mock: MockServer;
let client: ApiClient;

beforeAll(async () => {
  mock = await createMockServer();
  client = new ApiClient(mock.base);
});

afterAll(async () => {
  await mock.close();
});

describe("ApiClient.searchUrl", () => {
  it("encodes the query and optional parameters", () => {
    const bare = new ApiClient("http://h.example");
    expect(bare.searchUrl("two words")).toBe("http://h.example/api/search?q=two+words");
    expect(bare.searchUrl("bank", { k: 5, user: "alice", strategy: "meaning_only" })).toBe(
      "http://h.example/api/search?q=bank&k=5&user=alice&strategy=meaning_only",
    );
  });

  it("tolerates a trailing slash in the base", () => {
    expect(new ApiClient("http://h.example/").searchUrl("x")).toBe("http://h.example/api/search?q=x");
  });
});

describe("ApiClient.search", () => {
  it("returns the parsed response payload", async () => {
    const response: SearchResponse = await client.search("bank");
    expect(response.query).toBe("bank");
    expect(response.clusters).toHaveLength(3);
    expect(response.clusters[0].sense.gloss).toBe("financial institution");
    expect(response.served_from_cache).toBe(false);
  });

  it("raises ApiRequestError with the service error body", async () => {
    await expect(client.search("")).rejects.toThrowError(ApiRequestError);
    try {
      await client.search("");
    } catch (error) {
      const apiError = error as ApiRequestError;
      expect(apiError.status).toBe(400);
      expect(apiError.code).toBe("bad_request");
    }
  });

  it("maps a 502 to the failure error code", async () => {
    const failing = await createMockServer({ failSearch: true });
    try {
      await expect(new ApiClient(failing.base).search("bank")).rejects.toMatchObject({
        status: 502,
        code: "all_providers_failed",
      });
    } finally {
      await failing.close();
    }
  });
});

describe("ApiClient.recordSelection", () => {
  it("posts the selection and returns the acknowledgment", async () => {
    const ack = await client.recordSelection("alice", "bank", "finance");
    expect(ack.recorded).toBe(true);
    expect(ack.chosen_category).toBe("finance");

    const posts = mock.requests.filter((r) => r.method === "POST" && r.path === "/api/history");
    expect(posts.length).toBeGreaterThan(0);
    expect(JSON.parse(posts[posts.length - 1].body)).toEqual({
      user_id: "alice",
      query: "bank",
      chosen_category: "finance",
    });
  });
});
