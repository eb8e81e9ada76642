#!/usr/bin/env node
import { readFileSync } from 'node:fs';
import { parseArgs } from 'node:util';

import { loadModel, predict } from './model.js';
import { serve } from './serve.js';

const USAGE = `usage: hga-adapter --model MODEL.json
       hga-adapter --constant LABEL --labels a,b
       hga-adapter --lookup TABLE.json [--labels a,b]

Serves the hga-adapter/1 protocol on stdin/stdout. Exactly one mode is
required. --lookup takes a JSON object mapping text to label; without
--labels its label set is the distinct table values in first-seen order.`;

function fail(message: string, code: number): never {
  process.stderr.write(message + '\n');
  process.exit(code);
}

function splitLabels(raw: string | undefined): string[] | null {
  if (raw === undefined) return null;
  const labels = raw.split(',').map((l) => l.trim()).filter((l) => l.length > 0);
  return labels.length > 0 ? labels : null;
}

function main(): void {
  let values;
  try {
    ({ values } = parseArgs({
      options: {
        model: { type: 'string' },
        constant: { type: 'string' },
        lookup: { type: 'string' },
        labels: { type: 'string' },
        help: { type: 'boolean', short: 'h' },
      },
    }));
  } catch (err) {
    fail(`${err instanceof Error ? err.message : err}\n${USAGE}`, 2);
  }
  if (values.help) {
    process.stdout.write(USAGE + '\n');
    return;
  }
  const modes = [values.model, values.constant, values.lookup].filter(
    (v) => v !== undefined,
  );
  if (modes.length !== 1) {
    fail(USAGE, 2);
  }

  let labels: string[];
  let predictLabel: (text: string) => string;

  if (values.model !== undefined) {
    // load failures must exit before the handshake so the harness sees a
    // dead process, not a half-open session
    try {
      const model = loadModel(values.model);
      labels = model.labels;
      predictLabel = (text) => predict(model, text).label;
    } catch (err) {
      fail(`cannot load model: ${err instanceof Error ? err.message : err}`, 3);
    }
  } else if (values.constant !== undefined) {
    const parsed = splitLabels(values.labels);
    if (parsed === null) {
      fail(`--constant needs --labels\n${USAGE}`, 2);
    }
    labels = parsed;
    const constant = values.constant;
    predictLabel = () => constant;
  } else {
    let table: Record<string, string>;
    try {
      table = JSON.parse(readFileSync(values.lookup as string, 'utf-8'));
    } catch (err) {
      fail(`cannot load lookup table: ${err instanceof Error ? err.message : err}`, 3);
    }
    labels = splitLabels(values.labels) ?? [...new Set(Object.values(table))];
    if (labels.length === 0) {
      fail('lookup table is empty and no --labels given', 3);
    }
    predictLabel = (text) => {
      const label = table[text];
      if (label === undefined) {
        throw new Error(`text not in lookup table: ${JSON.stringify(text)}`);
      }
      return label;
    };
  }

  serve({
    labels,
    predictLabel,
    input: process.stdin,
    output: process.stdout,
  }).catch((err) => {
    fail(`adapter crashed: ${err instanceof Error ? err.stack : err}`, 1);
  });
}

main();
