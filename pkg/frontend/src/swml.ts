/**
 * Minimal SWML bridge for the editor.
 *
 * Writing: the editor emits plain schema-conforming SWML and lets the
 * service canonicalize it on PUT. Reading: documents fetched from the
 * service are always in canonical form (one element per line, fixed
 * attribute order), so a small line reader is sufficient client-side.
 */

export interface PlacementData {
  code: string;
  x: number;
  y: number;
  z: number;
}

export interface SignData {
  signId: string;
  source: string;
  glosses: string[];
  placements: PlacementData[];
}

export interface DocumentData {
  columns: SignData[][];
}

const ENTITIES: Record<string, string> = {
  "&amp;": "&",
  "&lt;": "<",
  "&gt;": ">",
  "&quot;": '"',
  "&#9;": "\t",
  "&#10;": "\n",
  "&#13;": "\r",
};

function escapeXml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function unescapeXml(value: string): string {
  return value.replace(/&amp;|&lt;|&gt;|&quot;|&#9;|&#10;|&#13;/g, (m) => ENTITIES[m] ?? m);
}

export function buildSwml(doc: DocumentData, title?: string): string {
  const lines: string[] = ['<?xml version="1.0" encoding="UTF-8"?>', '<swml version="1">'];
  lines.push(title ? `  <doc-meta title="${escapeXml(title)}"/>` : "  <doc-meta/>");
  for (const column of doc.columns) {
    if (column.length === 0) {
      lines.push("  <column/>");
      continue;
    }
    lines.push("  <column>");
    for (const sign of column) {
      lines.push(`    <sign id="${escapeXml(sign.signId)}" source="${sign.source}">`);
      for (const gloss of sign.glosses) {
        lines.push(`      <gloss>${escapeXml(gloss)}</gloss>`);
      }
      for (const p of sign.placements) {
        lines.push(`      <glyph code="${p.code}" x="${p.x}" y="${p.y}" z="${p.z}"/>`);
      }
      lines.push("    </sign>");
    }
    lines.push("  </column>");
  }
  lines.push("</swml>");
  return lines.join("\n") + "\n";
}

const SIGN_RE = /^<sign id="([^"]*)" source="([^"]*)">$/;
const GLYPH_RE = /^<glyph code="([^"]+)" x="(\d+)" y="(\d+)" z="(-?\d+)"\/>$/;
const GLOSS_RE = /^<gloss>(.*)<\/gloss>$/;

/** Parse the service's canonical SWML output (not a general XML parser). */
export function parseCanonicalSwml(text: string): DocumentData {
  const doc: DocumentData = { columns: [] };
  let column: SignData[] | null = null;
  let sign: SignData | null = null;
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "<column>" || line === "<column/>") {
      column = [];
      doc.columns.push(column);
      continue;
    }
    if (line === "</column>") {
      column = null;
      continue;
    }
    const signMatch = SIGN_RE.exec(line);
    if (signMatch) {
      sign = {
        signId: unescapeXml(signMatch[1]),
        source: signMatch[2],
        glosses: [],
        placements: [],
      };
      if (!column) throw new Error("sign outside column in canonical SWML");
      column.push(sign);
      continue;
    }
    if (line === "</sign>") {
      sign = null;
      continue;
    }
    const glyphMatch = GLYPH_RE.exec(line);
    if (glyphMatch && sign) {
      sign.placements.push({
        code: glyphMatch[1],
        x: Number(glyphMatch[2]),
        y: Number(glyphMatch[3]),
        z: Number(glyphMatch[4]),
      });
      continue;
    }
    const glossMatch = GLOSS_RE.exec(line);
    if (glossMatch && sign) {
      sign.glosses.push(unescapeXml(glossMatch[1]));
    }
  }
  return doc;
}
