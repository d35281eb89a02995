/**
 * Typed client over the annotation service's HTTP+JSON API.
 *
 * Every mutation round-trips through the server; nothing in the UI invents
 * graph facts. Errors carry the service's code/message/position payload.
 */

export interface ImageRef {
  id: string;
  media_type: string;
  width: number;
  height: number;
  checksum: string;
}

export type Region =
  | { kind: "point"; x: number; y: number }
  | { kind: "polygon"; points: [number, number][] };

export interface Annotation {
  id: string;
  image: string;
  region: Region;
  class: string;
  instance: string;
  label: string;
}

export interface Project {
  id: string;
  name: string;
  created_at: string;
  images: ImageRef[];
  annotations: Annotation[];
}

export interface RelationOption {
  term: string;
  label: string;
  domain: string;
  range: string;
  literal?: boolean;
}

export interface VocabClass {
  term: string;
  label: string;
  definition: string;
  relations: RelationOption[];
}

export interface GraphNode {
  id: string;
  label: string;
  types: string[];
}

export interface GraphEdge {
  from: string;
  rel: string;
  to: string;
  provenance: string;
  rule?: string;
  source?: string;
}

export interface GraphExport {
  nodes: GraphNode[];
  edges: GraphEdge[];
  prefixes: Record<string, string>;
}

export interface Violation {
  focus: string;
  shape: string;
  constraint: string;
  found: number;
  min: number;
  max: number | null;
  severity: string;
  message: string;
}

export interface Status {
  consistency: { consistent: boolean; clashes: unknown[] };
  validation: { conforms: boolean; violations: Violation[] };
  graph: GraphExport;
}

export interface QueryEdge {
  from: string;
  rel: string;
  to: string;
}

export interface QueryResult {
  projection: string[];
  bindings: Record<string, string>[];
  explanations: QueryEdge[][];
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  position?: { line: number; column: number };
}

export class ApiError extends Error {
  readonly code: string;
  readonly position?: { line: number; column: number };
  readonly status: number;

  constructor(status: number, payload: ApiErrorPayload) {
    super(payload.message);
    this.status = status;
    this.code = payload.code;
    this.position = payload.position;
  }
}

async function parseResponse<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let payload: ApiErrorPayload = {
    code: "HttpError",
    message: `${response.status} ${response.statusText}`,
  };
  try {
    const body = (await response.json()) as { error?: ApiErrorPayload };
    if (body.error) payload = body.error;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, payload);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return parseResponse<T>(response);
  }

  private async getJson<T>(path: string): Promise<T> {
    return parseResponse<T>(await fetch(this.base + path));
  }

  createProject(name: string): Promise<Project> {
    return this.postJson("/projects", { name });
  }

  getProject(id: string): Promise<Project> {
    return this.getJson(`/projects/${id}`);
  }

  async uploadImage(
    projectId: string,
    bytes: ArrayBuffer | Uint8Array,
    mediaType: "image/png" | "image/jpeg",
  ): Promise<ImageRef> {
    const response = await fetch(`${this.base}/projects/${projectId}/images`, {
      method: "POST",
      headers: { "content-type": mediaType },
      body: bytes as BodyInit,
    });
    return parseResponse<ImageRef>(response);
  }

  vocabulary(): Promise<{ classes: VocabClass[] }> {
    return this.getJson("/vocabulary");
  }

  addAnnotation(
    projectId: string,
    image: string,
    region: Region,
    classTerm: string,
    label?: string,
  ): Promise<Annotation> {
    return this.postJson(`/projects/${projectId}/annotations`, {
      image,
      region,
      class: classTerm,
      label,
    });
  }

  suggestLinks(
    projectId: string,
    from: string,
    to: string,
  ): Promise<{ relations: RelationOption[] }> {
    return this.postJson(`/projects/${projectId}/links:suggest`, { from, to });
  }

  addLink(
    projectId: string,
    from: string,
    relation: string,
    to: string,
  ): Promise<{ from: string; relation: string; to: string }> {
    return this.postJson(`/projects/${projectId}/links`, { from, relation, to });
  }

  setQuality(
    projectId: string,
    annotation: string,
    kind: string,
    magnitude: number,
    unit: "degree" | "meter",
    alsoOf?: string,
  ): Promise<{ instance: string; class: string }> {
    return this.postJson(`/projects/${projectId}/qualities`, {
      annotation,
      kind,
      magnitude,
      unit,
      also_of: alsoOf,
    });
  }

  status(projectId: string): Promise<Status> {
    return this.getJson(`/projects/${projectId}/status`);
  }

  query(projectId: string, text: string): Promise<QueryResult> {
    return this.postJson(`/projects/${projectId}/query`, { query: text });
  }

  async exportTurtle(projectId: string): Promise<string> {
    const response = await fetch(
      `${this.base}/projects/${projectId}/export?format=ttl`,
    );
    if (!response.ok) throw new ApiError(response.status, {
      code: "HttpError",
      message: `${response.status}`,
    });
    return response.text();
  }

  exportGraph(projectId: string): Promise<GraphExport> {
    return this.getJson(`/projects/${projectId}/export?format=json`);
  }
}
