import { createInterface } from 'node:readline';

import { handshakeLine, parseRequest, responseLine } from './protocol.js';

export interface ServeOptions {
  labels: string[];
  predictLabel: (text: string) => string;
  input: NodeJS.ReadableStream;
  output: NodeJS.WritableStream;
}

/** Announce the label set, then answer request lines until stdin closes. */
export async function serve(options: ServeOptions): Promise<void> {
  const { labels, predictLabel, input, output } = options;
  output.write(handshakeLine(labels));

  const lines = createInterface({ input, crlfDelay: Infinity });
  for await (const line of lines) {
    const parsed = parseRequest(line);
    if (!parsed.ok) {
      output.write(responseLine({ id: parsed.id, error: parsed.error }));
      continue;
    }
    const { id, text } = parsed.request;
    try {
      output.write(responseLine({ id, label: predictLabel(text) }));
    } catch (err) {
      const why = err instanceof Error ? err.message : String(err);
      output.write(responseLine({ id, error: why }));
    }
  }
}
