export {
  readBerCsv,
  readTubCsv,
  readThresholdJson,
  type BerRow,
  type TubRow,
  type ThresholdDoc,
} from "./formats.js";
export {
  renderBerFigure,
  loadFigureSpec,
  type FigureSpec,
  type PanelSpec,
  type InputSpec,
  type InputKind,
} from "./figure.js";
