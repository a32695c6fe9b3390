// Visual and interaction constants. Hues are chosen for contrast on the
// dark canvas and stay configurable; the engine only reports color classes.

import type { ColorClass } from './types.js';

export const PALETTE: Record<ColorClass, string> = {
  active: '#f5c518', // yellow: the link being traversed
  related: '#e4572e', // red: other links of the traced element
  unrelated: '#4a7fb5', // blue: everything else
  managed: '#3fa45b', // green: manually pinned links
};

export const VIEW_FRAME = '#5a6472';
export const BACKGROUND = '#14181d';
export const ELEMENT_FILL = '#c8d1dc';
export const BUNDLE_FILL = '#9a86c8';
export const COPY_FILL = '#7fb4e0';
export const FOCUS_FILL = '#ffffff';
export const TEXT_COLOR = '#aab4c0';

export const LINK_WIDTH = 2;
export const ACTIVE_LINK_WIDTH = 3;
export const PROGRESS_TRAIL_WIDTH = 5;

// focus marker: a semi-transparent, slightly larger copy of the element
export type MarkerVariant = 'scaledCopy' | 'outlined';
export const MARKER_VARIANT: MarkerVariant = 'scaledCopy';
export const MARKER_RADIUS = 9;
export const MARKER_ALPHA = 0.45;

// progress bar above the marker
export const PROGRESS_BAR_WIDTH = 40;
export const PROGRESS_BAR_HEIGHT = 6;
export const PROGRESS_BAR_OFFSET = 12;

export const ELEMENT_RADIUS = 4;
export const BAR_WIDTH = 7;
export const FOCUS_RADIUS = 4;
export const COPY_SIZE = 10;

// pointer-to-glyph hit slop, and the drag command rate cap
export const HIT_RADIUS = 8;
export const MAX_DRAG_COMMANDS_PER_SECOND = 120;
