// Shapes of the documents the service serves. The UI owns none of this
// state; every field here is a readout of a server response or event.
export class SchemaMismatch extends Error {
    constructor(where) {
        super(`unexpected document shape at ${where}`);
    }
}
function isVec3(value) {
    return Array.isArray(value) && value.length === 3 && value.every((n) => typeof n === 'number');
}
export function checkScene(doc) {
    const scene = doc;
    if (!scene || typeof scene !== 'object')
        throw new SchemaMismatch('scene');
    if (!scene.agent || !isVec3(scene.agent.position) || !isVec3(scene.agent.orientation)) {
        throw new SchemaMismatch('scene.agent');
    }
    if (!Array.isArray(scene.objects))
        throw new SchemaMismatch('scene.objects');
    for (const obj of scene.objects) {
        if (typeof obj.id !== 'number' || typeof obj.kind !== 'string' || !isVec3(obj.position)) {
            throw new SchemaMismatch(`scene.objects[${obj?.id ?? '?'}]`);
        }
    }
    if (!scene.water || !Array.isArray(scene.water.color))
        throw new SchemaMismatch('scene.water');
    return scene;
}
export function checkTrajectory(doc) {
    const body = doc;
    if (!body || !Array.isArray(body.records))
        throw new SchemaMismatch('trajectory.records');
    for (const record of body.records) {
        if (typeof record.frame !== 'number' || !isVec3(record.position)) {
            throw new SchemaMismatch('trajectory.records[]');
        }
    }
    return body.records;
}
