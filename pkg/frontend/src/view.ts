// World <-> canvas mapping. World is meters, +Y up; the canvas is pixels,
// +y down. The view pans over world coordinates and zooms in px/meter.

export interface ViewState {
  centerX: number; // world x at the canvas center
  centerY: number;
  zoom: number; // pixels per meter, > 0
  selectedId: number | null;
  trailLength: number; // trajectory records to draw
}

export interface CanvasSize {
  width: number;
  height: number;
}

export function defaultView(): ViewState {
  return { centerX: 0, centerY: 0, zoom: 10, selectedId: null, trailLength: 600 };
}

export function worldToCanvas(
  view: ViewState,
  size: CanvasSize,
  wx: number,
  wy: number,
): { x: number; y: number } {
  return {
    x: size.width / 2 + (wx - view.centerX) * view.zoom,
    y: size.height / 2 - (wy - view.centerY) * view.zoom,
  };
}

export function canvasToWorld(
  view: ViewState,
  size: CanvasSize,
  cx: number,
  cy: number,
): { x: number; y: number } {
  return {
    x: view.centerX + (cx - size.width / 2) / view.zoom,
    y: view.centerY - (cy - size.height / 2) / view.zoom,
  };
}

export function panBy(view: ViewState, dxPx: number, dyPx: number): ViewState {
  return {
    ...view,
    centerX: view.centerX - dxPx / view.zoom,
    centerY: view.centerY + dyPx / view.zoom,
  };
}

const MIN_ZOOM = 0.5;
const MAX_ZOOM = 200;

/** Zoom by a factor while keeping the world point under the cursor fixed. */
export function zoomAt(
  view: ViewState,
  size: CanvasSize,
  factor: number,
  cursorX: number,
  cursorY: number,
): ViewState {
  const zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, view.zoom * factor));
  if (zoom === view.zoom) return view;
  const anchor = canvasToWorld(view, size, cursorX, cursorY);
  // Solve for the center that keeps `anchor` under (cursorX, cursorY).
  return {
    ...view,
    zoom,
    centerX: anchor.x - (cursorX - size.width / 2) / zoom,
    centerY: anchor.y + (cursorY - size.height / 2) / zoom,
  };
}
