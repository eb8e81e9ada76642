export { PROTOCOL, handshakeLine, parseRequest, responseLine } from './protocol.js';
export type { AdapterRequest, AdapterResponse, Handshake, ParsedRequest } from './protocol.js';
export { MODEL_FORMAT, featurize, loadModel, predict } from './model.js';
export type { NbModel, Prediction } from './model.js';
export { serve } from './serve.js';
export type { ServeOptions } from './serve.js';
