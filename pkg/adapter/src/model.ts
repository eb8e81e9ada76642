import { readFileSync } from 'node:fs';

export const MODEL_FORMAT = 'hga/nb-model@1';

export interface NbModel {
  labels: string[];
  logPriors: number[];
  // one map per label: n-gram -> log P(gram | label)
  logLikelihoods: Array<Map<string, number>>;
  nLow: number;
  nHigh: number;
}

export interface Prediction {
  label: string;
  scores: number[];
}

function bad(path: string, why: string): Error {
  return new Error(`${path}: not a ${MODEL_FORMAT} document (${why})`);
}

export function loadModel(path: string): NbModel {
  const doc = JSON.parse(readFileSync(path, 'utf-8'));
  if (doc?.format !== MODEL_FORMAT) {
    throw bad(path, `format=${JSON.stringify(doc?.format)}`);
  }
  const labels: unknown = doc.labels;
  if (!Array.isArray(labels) || labels.length < 2 || !labels.every((l) => typeof l === 'string')) {
    throw bad(path, 'labels must list at least two strings');
  }
  const logPriors: unknown = doc.log_priors;
  if (!Array.isArray(logPriors) || logPriors.length !== labels.length) {
    throw bad(path, 'log_priors must match labels');
  }
  const rawLikelihoods: unknown = doc.log_likelihoods;
  if (!Array.isArray(rawLikelihoods) || rawLikelihoods.length !== labels.length) {
    throw bad(path, 'log_likelihoods must match labels');
  }
  const nLow = doc.config?.n_low;
  const nHigh = doc.config?.n_high;
  if (!Number.isInteger(nLow) || !Number.isInteger(nHigh) || nLow < 1 || nHigh < nLow) {
    throw bad(path, `bad n-gram range [${nLow}, ${nHigh}]`);
  }
  return {
    labels: labels as string[],
    logPriors: logPriors as number[],
    logLikelihoods: (rawLikelihoods as Array<Record<string, number>>).map(
      (table) => new Map(Object.entries(table)),
    ),
    nLow,
    nHigh,
  };
}

// N-grams are windows over Unicode scalars, not UTF-16 units, so astral
// characters (emoji) count as one position, matching the harness exactly.
export function featurize(text: string, nLow: number, nHigh: number): Map<string, number> {
  const chars = Array.from(text);
  const grams = new Map<string, number>();
  for (let n = nLow; n <= nHigh; n++) {
    for (let i = 0; i + n <= chars.length; i++) {
      const gram = chars.slice(i, i + n).join('');
      grams.set(gram, (grams.get(gram) ?? 0) + 1);
    }
  }
  return grams;
}

export function predict(model: NbModel, text: string): Prediction {
  const grams = featurize(text, model.nLow, model.nHigh);
  const scores = [...model.logPriors];
  for (const [gram, count] of grams) {
    if (model.logLikelihoods[0].has(gram)) {
      for (let i = 0; i < model.labels.length; i++) {
        scores[i] += count * (model.logLikelihoods[i].get(gram) as number);
      }
    }
  }
  let best = 0;
  for (let i = 1; i < scores.length; i++) {
    if (scores[i] > scores[best]) best = i;
  }
  return { label: model.labels[best], scores };
}
