export { CSV_COLUMNS, CurveFile, CurveRow, SchemaError, parseCurveText, readCurveFile } from "./csv.js";
export { PlotKind, PlotSpec, SeriesSpec, SpecError, loadSpec, validateSpec } from "./spec.js";
export { renderFigure } from "./render.js";
export { parseArgs, run } from "./cli.js";
