/**
 * OGR upload-and-review flow: upload a page image, poll the job, collect
 * per-glyph decisions (accept / replace / delete / add), finalize, and hand
 * the resulting document back to the editor.
 */

import {
  ApiClient,
  JobRecord,
  RecognitionReport,
  ReviewEditPayload,
} from "./api.js";
import { DocumentData, parseCanonicalSwml } from "./swml.js";

export type GlyphDecision =
  | { kind: "accept" }
  | { kind: "replace"; code: string }
  | { kind: "delete" };

export class ReviewSession {
  job: JobRecord | null = null;
  report: RecognitionReport | null = null;
  decisions: GlyphDecision[] = [];
  blobAdds: Map<number, string> = new Map(); // unresolved index -> code

  constructor(private api: ApiClient) {}

  get jobId(): string {
    if (!this.job) throw new Error("no job submitted");
    return this.job.job_id;
  }

  async upload(image: Blob | Uint8Array): Promise<JobRecord> {
    const submitted = await this.api.submitOgr(image);
    this.job = await this.api.pollJob(submitted.job_id);
    if (this.job.state === "failed") {
      throw new Error(this.job.error ?? "recognition failed");
    }
    this.report = await this.api.getReport(this.jobId);
    this.decisions = this.report.recognized.map(() => ({ kind: "accept" }));
    this.blobAdds.clear();
    return this.job;
  }

  overlayUrl(): string {
    return this.api.overlayUrl(this.jobId);
  }

  accept(index: number): void {
    this.requireGlyph(index);
    this.decisions[index] = { kind: "accept" };
  }

  replace(index: number, code: string): void {
    this.requireGlyph(index);
    this.decisions[index] = { kind: "replace", code };
  }

  remove(index: number): void {
    this.requireGlyph(index);
    this.decisions[index] = { kind: "delete" };
  }

  resolveBlob(index: number, code: string): void {
    if (!this.report || !this.report.unresolved[index]) {
      throw new Error(`no unresolved blob ${index}`);
    }
    this.blobAdds.set(index, code);
  }

  edits(): ReviewEditPayload[] {
    const edits: ReviewEditPayload[] = [];
    this.decisions.forEach((decision, i) => {
      if (decision.kind === "replace") {
        edits.push({ op: "replace", target: `r${i}`, code: decision.code });
      } else if (decision.kind === "delete") {
        edits.push({ op: "delete", target: `r${i}` });
      }
    });
    for (const [i, code] of this.blobAdds) {
      edits.push({ op: "add", target: `b${i}`, code });
    }
    return edits;
  }

  /** Finalize with the collected edits; returns the document for editing. */
  async finalize(ingest?: boolean): Promise<{ swml: string; document: DocumentData }> {
    const swml = await this.api.review(this.jobId, this.edits(), ingest);
    return { swml, document: parseCanonicalSwml(swml) };
  }

  private requireGlyph(index: number): void {
    if (!this.report || !this.report.recognized[index]) {
      throw new Error(`no recognized glyph ${index}`);
    }
  }
}
