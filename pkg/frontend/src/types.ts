// Protocol and snapshot shapes exchanged with the engine (one JSON object
// per websocket message).

export type Point = [number, number];

export interface ViewDef {
  id: string;
  kind: 'map' | 'barChart' | 'nodeLinkGraph' | 'relationshipView';
  rect: [number, number, number, number];
}

export interface ElementDef {
  id: string;
  kind: string; // entity type or "bundle"
  label: string;
  view: string;
  pos: Point;
}

export interface PathPayload {
  type: 'cubic' | 'polyline';
  points: Point[];
}

export interface LinkDef {
  id: string;
  kind: 'direct' | 'leg';
  a: string;
  b: string;
  path: PathPayload;
}

export interface StaticPayload {
  views: ViewDef[];
  elements: ElementDef[];
  links: LinkDef[];
}

export type ColorClass = 'active' | 'related' | 'unrelated' | 'managed';

export interface MarkerState {
  id: string;
  anchor: string;
  activeLink: string | null;
  arcLength: number;
  proportion: number;
  pos: Point;
  fociEnabled: boolean;
  managing: boolean;
}

export interface FocusState {
  id: string;
  marker: string;
  link: string;
  pos: Point;
  proportion: number;
}

export interface CopyState {
  id: string;
  source: string;
  pos: Point;
  stopMode: 'viewBorder' | 'nearMarker';
}

export interface LinkStyle {
  colorClass: ColorClass;
  opacity: number;
}

export interface ProgressState {
  marker: string;
  proportion: number;
  subpath: Point[];
}

export interface Snapshot {
  markers: MarkerState[];
  foci: FocusState[];
  copies: CopyState[];
  linkStyles: Record<string, LinkStyle>;
  progress: ProgressState[];
  pinnedPaths: Record<string, PathPayload>;
}

export interface LogRecord {
  timestampMs: number;
  kind: string;
  targetId: string | null;
  payload: Record<string, unknown>;
}

export type Command =
  | { cmd: 'load'; data?: string }
  | { cmd: 'toggleMarker'; element: string }
  | { cmd: 'drag'; marker: string; x: number; y: number }
  | { cmd: 'endDrag'; marker: string }
  | { cmd: 'toggleFoci'; marker: string }
  | { cmd: 'attract'; marker: string; mode: 'viewBorder' | 'nearMarker' }
  | { cmd: 'pin'; marker: string }
  | { cmd: 'unpin'; link: string }
  | { cmd: 'setTransparency'; mode: 'off' | 'fadeUnrelated' | 'fadeAllButActive' }
  | { cmd: 'setUnpinnedVisibility'; mode: 'normal' | 'semiTransparent' | 'hidden' }
  | { cmd: 'hover'; target: string }
  | { cmd: 'click'; target: string };

export type ServerEvent =
  | { event: 'loaded'; static: StaticPayload; state: Snapshot }
  | { event: 'snapshot'; seq: number; state: Snapshot; metrics: Record<string, number> }
  | { event: 'log'; record: LogRecord }
  | { event: 'hover'; info: { label: string; highlight: string } }
  | { event: 'error'; message: string };
