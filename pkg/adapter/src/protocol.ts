export const PROTOCOL = 'hga-adapter/1';

export interface Handshake {
  protocol: string;
  labels: string[];
}

export interface AdapterRequest {
  id: number;
  text: string;
}

export interface AdapterResponse {
  id: number | null;
  label?: string;
  error?: string;
}

export function handshakeLine(labels: string[]): string {
  const handshake: Handshake = { protocol: PROTOCOL, labels };
  return JSON.stringify(handshake) + '\n';
}

export function responseLine(res: AdapterResponse): string {
  return JSON.stringify(res) + '\n';
}

export type ParsedRequest =
  | { ok: true; request: AdapterRequest }
  | { ok: false; id: number | null; error: string };

// Malformed lines never kill the session: the harness gets an error
// response carrying whatever id could be recovered, null otherwise.
export function parseRequest(line: string): ParsedRequest {
  let doc: unknown;
  try {
    doc = JSON.parse(line);
  } catch {
    return { ok: false, id: null, error: `malformed request: not JSON: ${line.trim()}` };
  }
  if (typeof doc !== 'object' || doc === null || Array.isArray(doc)) {
    return { ok: false, id: null, error: 'malformed request: not an object' };
  }
  const rec = doc as Record<string, unknown>;
  const id = Number.isInteger(rec.id) ? (rec.id as number) : null;
  if (id === null) {
    return { ok: false, id: null, error: 'malformed request: missing integer id' };
  }
  if (typeof rec.text !== 'string') {
    return { ok: false, id, error: 'malformed request: missing text field' };
  }
  return { ok: true, request: { id, text: rec.text } };
}
