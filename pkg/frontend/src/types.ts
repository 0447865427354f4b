/** Wire types mirroring the review API's JSON bodies. */

export interface SpanLabelData {
  name: string;
  start: number | null;
  end: number | null;
  fe_id: number | null;
  created_by: string | null;
  itype: string | null;
}

export interface TokenLabelData {
  token_id: number | null;
  head_id: number | null;
  label: string;
  pos: string;
  lemma: string;
  form: string;
  morph: string;
}

export interface LayerData {
  name: string;
  rank: number;
  labels: Array<SpanLabelData | TokenLabelData>;
}

export interface AnnotationSetData {
  id: number;
  sentence_id: number;
  frame: string | null;
  status: string;
  created_date: string;
  layers: LayerData[];
}

export interface SentenceData {
  id: number;
  language: string;
  direction: "ltr" | "rtl";
  text: string;
  annotation_sets: AnnotationSetData[];
}

export interface ParagraphData {
  pid: string;
  sentences: SentenceData[];
}

export interface DocumentSummary {
  key: string;
  novel: string;
  chapter: string;
  paragraphs: number;
}

export interface DocumentDetail {
  key: string;
  novel: string;
  chapter: string;
  paragraphs: string[];
}

export interface DiagnosticData {
  code: string;
  severity: string;
  location: string;
  message: string;
}

export interface AnalysisRowData {
  source_frame: string;
  target_frame: string;
  count: number;
  example_lemmas: string[];
}

export interface AnalysisData {
  src: string;
  tgt: string;
  total: number;
  same_frame: number;
  related_shift: number;
  unrelated_shift: number;
  parallelism: { numerator: number; denominator: number; percentage: number } | null;
  rows: AnalysisRowData[];
  diagnostics: DiagnosticData[];
}

export function isSpanLabel(label: SpanLabelData | TokenLabelData): label is SpanLabelData {
  return "name" in label;
}

/** Labels that cover text, i.e. carry both offsets. */
export function hasSpan(label: SpanLabelData): label is SpanLabelData & { start: number; end: number } {
  return label.start !== null && label.end !== null;
}

export function spanLabels(set: AnnotationSetData, layerName: string): SpanLabelData[] {
  const layer = set.layers.find((l) => l.name === layerName && l.rank === 1);
  if (!layer) return [];
  return layer.labels.filter(isSpanLabel);
}
