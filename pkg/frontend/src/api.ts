/**
 * Typed client for the swkit HTTP service. The editor is a pure client of
 * this API: filtering, prediction, and recognition all happen server-side.
 */

export interface CategoryInfo {
  category: number;
  groups: number[];
  glyph_count: number;
}

export interface RegionInfo {
  name: string;
  kind: "body" | "aspect";
  linked_scopes: [number, number | null][];
}

export interface ChoiceBox {
  attribute: string;
  options: string[];
}

export interface GlyphInfo {
  code: string;
  name: string;
  region: string;
  attributes: Record<string, string>;
  exception: boolean;
}

export interface Suggestion {
  code: string;
  score: string; // exact rational, e.g. "2/3"
  tier: "exact" | "backoff-pairwise" | "backoff-frequency";
}

export interface JobRecord {
  job_id: string;
  kind: string;
  state: "queued" | "running" | "awaiting-review" | "finalized" | "failed";
  error: string | null;
  created_at: string;
  artifacts: Record<string, string>;
}

export interface RecognizedGlyph {
  code: string;
  bbox: [number, number, number, number];
  confidence: number;
  alternates: string[];
  blob_count: number;
}

export interface UnresolvedBlob {
  bbox: [number, number, number, number];
  area: number;
  centroid: [number, number];
}

export interface RecognitionReport {
  page: { width: number; height: number };
  total_blobs: number;
  recognized: RecognizedGlyph[];
  unresolved: UnresolvedBlob[];
  signs: { sign_id: string; column: number; origin: [number, number]; glyph_indices: number[] }[];
}

export interface ReviewEditPayload {
  op: "accept" | "replace" | "delete" | "add" | "merge" | "split";
  target?: string;
  code?: string;
  bbox?: [number, number, number, number];
  targets?: string[];
  at_y?: number;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function expectOk(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return response;
}

export class ApiClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await expectOk(await fetch(this.url(path)));
    return (await response.json()) as T;
  }

  async categories(): Promise<CategoryInfo[]> {
    return (await this.getJson<{ categories: CategoryInfo[] }>("/catalog/categories"))
      .categories;
  }

  async regions(): Promise<RegionInfo[]> {
    return (await this.getJson<{ regions: RegionInfo[] }>("/catalog/regions")).regions;
  }

  async choiceBoxes(region: string): Promise<ChoiceBox[]> {
    const path = `/catalog/choice-boxes?region=${encodeURIComponent(region)}`;
    return (await this.getJson<{ boxes: ChoiceBox[] }>(path)).boxes;
  }

  async glyphs(region: string, filters: Record<string, string> = {}): Promise<GlyphInfo[]> {
    const params = new URLSearchParams({ region, ...filters });
    return (await this.getJson<{ glyphs: GlyphInfo[] }>(`/catalog/glyphs?${params}`)).glyphs;
  }

  assetUrl(code: string): string {
    return this.url(`/catalog/glyphs/${code}/asset`);
  }

  async predict(placed: string[], k?: number): Promise<Suggestion[]> {
    const body: { placed: string[]; k?: number } = { placed };
    if (k !== undefined) body.k = k;
    const response = await expectOk(
      await fetch(this.url("/predict"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
    return ((await response.json()) as { suggestions: Suggestion[] }).suggestions;
  }

  async postSign(payload: {
    sign_id?: string;
    placements: { code: string; x: number; y: number; z?: number }[];
    gloss_labels?: string[];
  }): Promise<string[]> {
    const response = await expectOk(
      await fetch(this.url("/signs"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );
    return ((await response.json()) as { entry_ids: string[] }).entry_ids;
  }

  async putDocument(docId: string, swml: string): Promise<string> {
    const response = await expectOk(
      await fetch(this.url(`/documents/${docId}`), {
        method: "PUT",
        headers: { "content-type": "application/xml" },
        body: swml,
      }),
    );
    return await response.text();
  }

  async getDocument(docId: string): Promise<string> {
    const response = await expectOk(await fetch(this.url(`/documents/${docId}`)));
    return await response.text();
  }

  async submitOgr(image: Blob | Uint8Array): Promise<JobRecord> {
    const body = image instanceof Blob ? image : new Blob([image as BlobPart]);
    const response = await expectOk(
      await fetch(this.url("/ogr/jobs"), { method: "POST", body }),
    );
    return (await response.json()) as JobRecord;
  }

  async getJob(jobId: string): Promise<JobRecord> {
    return await this.getJson<JobRecord>(`/ogr/jobs/${jobId}`);
  }

  async pollJob(jobId: string, intervalMs = 250, timeoutMs = 30_000): Promise<JobRecord> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.state !== "queued" && job.state !== "running") return job;
      if (Date.now() > deadline) throw new ApiError(504, `job ${jobId} still ${job.state}`);
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }

  async getReport(jobId: string): Promise<RecognitionReport> {
    return await this.getJson<RecognitionReport>(`/ogr/jobs/${jobId}/report`);
  }

  async getDraft(jobId: string): Promise<string> {
    const response = await expectOk(await fetch(this.url(`/ogr/jobs/${jobId}/draft`)));
    return await response.text();
  }

  overlayUrl(jobId: string): string {
    return this.url(`/ogr/jobs/${jobId}/overlay`);
  }

  async review(jobId: string, edits: ReviewEditPayload[], ingest?: boolean): Promise<string> {
    const body: { edits: ReviewEditPayload[]; ingest?: boolean } = { edits };
    if (ingest !== undefined) body.ingest = ingest;
    const response = await expectOk(
      await fetch(this.url(`/ogr/jobs/${jobId}/review`), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
    return await response.text();
  }
}
