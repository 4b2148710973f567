// Shapes of the documents the service serves. The UI owns none of this
// state; every field here is a readout of a server response or event.

export interface SceneDocument {
  version: number;
  seed: number;
  next_id: number;
  agent: { position: number[]; orientation: number[] };
  water: { color: number[]; turbidity: number };
  terrain: { amplitude: number; lattice_spacing: number; seed: number };
  objects: SceneObjectDoc[];
}

export interface SceneObjectDoc {
  id: number;
  kind: string;
  position: number[];
  orientation: number[];
}

export interface TrajectoryRecord {
  frame: number;
  position: number[];
  orientation: number[];
}

export interface InstructionResult {
  text: string;
  status: 'accepted' | 'rejected' | 'provider_error';
  raw_reply: string;
  source: string;
  findings: string[];
  commands: string[];
  error: string;
}

export interface EventEnvelope {
  seq: number;
  kind: 'frame_advanced' | 'instruction_result' | 'capture_written' | 'run_halted';
  payload: Record<string, unknown>;
}

export interface StatusInfo {
  frame: number;
  playing: boolean;
  halted: boolean;
  pending_actions: number;
  captures: number;
}

export class SchemaMismatch extends Error {
  constructor(where: string) {
    super(`unexpected document shape at ${where}`);
  }
}

function isVec3(value: unknown): value is number[] {
  return Array.isArray(value) && value.length === 3 && value.every((n) => typeof n === 'number');
}

export function checkScene(doc: unknown): SceneDocument {
  const scene = doc as SceneDocument;
  if (!scene || typeof scene !== 'object') throw new SchemaMismatch('scene');
  if (!scene.agent || !isVec3(scene.agent.position) || !isVec3(scene.agent.orientation)) {
    throw new SchemaMismatch('scene.agent');
  }
  if (!Array.isArray(scene.objects)) throw new SchemaMismatch('scene.objects');
  for (const obj of scene.objects) {
    if (typeof obj.id !== 'number' || typeof obj.kind !== 'string' || !isVec3(obj.position)) {
      throw new SchemaMismatch(`scene.objects[${obj?.id ?? '?'}]`);
    }
  }
  if (!scene.water || !Array.isArray(scene.water.color)) throw new SchemaMismatch('scene.water');
  return scene;
}

export function checkTrajectory(doc: unknown): TrajectoryRecord[] {
  const body = doc as { records?: unknown };
  if (!body || !Array.isArray(body.records)) throw new SchemaMismatch('trajectory.records');
  for (const record of body.records as TrajectoryRecord[]) {
    if (typeof record.frame !== 'number' || !isVec3(record.position)) {
      throw new SchemaMismatch('trajectory.records[]');
    }
  }
  return body.records as TrajectoryRecord[];
}
