// World <-> canvas mapping. World is meters, +Y up; the canvas is pixels,
// +y down. The view pans over world coordinates and zooms in px/meter.
export function defaultView() {
    return { centerX: 0, centerY: 0, zoom: 10, selectedId: null, trailLength: 600 };
}
export function worldToCanvas(view, size, wx, wy) {
    return {
        x: size.width / 2 + (wx - view.centerX) * view.zoom,
        y: size.height / 2 - (wy - view.centerY) * view.zoom,
    };
}
export function canvasToWorld(view, size, cx, cy) {
    return {
        x: view.centerX + (cx - size.width / 2) / view.zoom,
        y: view.centerY - (cy - size.height / 2) / view.zoom,
    };
}
export function panBy(view, dxPx, dyPx) {
    return {
        ...view,
        centerX: view.centerX - dxPx / view.zoom,
        centerY: view.centerY + dyPx / view.zoom,
    };
}
const MIN_ZOOM = 0.5;
const MAX_ZOOM = 200;
/** Zoom by a factor while keeping the world point under the cursor fixed. */
export function zoomAt(view, size, factor, cursorX, cursorY) {
    const zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, view.zoom * factor));
    if (zoom === view.zoom)
        return view;
    const anchor = canvasToWorld(view, size, cursorX, cursorY);
    // Solve for the center that keeps `anchor` under (cursorX, cursorY).
    return {
        ...view,
        zoom,
        centerX: anchor.x - (cursorX - size.width / 2) / zoom,
        centerY: anchor.y + (cursorY - size.height / 2) / zoom,
    };
}
