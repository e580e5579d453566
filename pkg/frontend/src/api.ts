/** HTTP client for the mapper-stitch service; newer matrix requests abort
 * superseded in-flight ones. */

import type {
  DatasetInfo,
  MatrixApi,
  MatrixResultDoc,
  MatrixSpecBody,
  SampleDoc,
} from "./types.js";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class HttpApi implements MatrixApi {
  private inflight: AbortController | null = null;

  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const reason =
        body && typeof body === "object" && "error" in body
          ? String((body as { error: unknown }).error)
          : `HTTP ${response.status}`;
      throw new ApiError(reason, response.status);
    }
    return body as T;
  }

  async datasets(): Promise<DatasetInfo[]> {
    const doc = await this.json<{ datasets: DatasetInfo[] }>("/api/datasets");
    return doc.datasets;
  }

  async sample(dataset: string, variables: string[]): Promise<SampleDoc> {
    const query = encodeURIComponent(variables.join(","));
    return this.json<SampleDoc>(
      `/api/datasets/${encodeURIComponent(dataset)}/sample?vars=${query}`);
  }

  async postMatrix(spec: MatrixSpecBody): Promise<MatrixResultDoc> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      return await this.json<MatrixResultDoc>("/api/matrix", {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(spec),
        signal: controller.signal,
      });
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }
}
