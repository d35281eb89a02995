"""HTTP annotation service.

Projects hold an image set, user-placed regions bound to ontology classes,
and the instance graph those annotations generate. The ontology drives
everything the API offers: the vocabulary endpoint exposes only
user-facing classes, link suggestions are filtered by relation
domain/range under subclass closure, and every status call materializes a
snapshot and runs the consistency checker and the shape validator on it.

Persistence is one directory per project under the data dir
(GEOFAULT_DATA_DIR or --port flag via the CLI): project.json for metadata
and regions, graph.ttl for assertions, blobs/ for content-addressed
images. Mutations re-materialize the whole project graph; annotation
projects stay far below the scale where that would hurt.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .errors import GeoFaultError, ParseError
from .query import evaluate, explain_answer, parse_query
from .reasoner import check_consistency, compile_rules, materialize
from .schema import (
    Schema,
    annotation_vocabulary,
    dip_band,
    load_builtin_schema,
    subclass_closure,
)
from .store import ASSERTED, Graph
from .terms import Literal, Term, decimal_literal, RDF_TYPE
from .turtle import (
    export_structured,
    graph_from_document,
    parse_turtle,
    serialize_turtle,
)
from .validator import compile_shapes, validate

DATA_DIR_ENV = "GEOFAULT_DATA_DIR"

_MEDIA_TYPES = {"image/png": "png", "image/jpeg": "jpeg"}

# value ranges per quality kind: (unit, min, max, max exclusive?)
_QUALITY_RANGES = {
    "geofault:FaultDip": ("degree", Decimal(0), Decimal(90), False),
    "geofault:FaultAzimuth": ("degree", Decimal(0), Decimal(360), True),
    "geofault:FaultMaximumSeparation": ("meter", Decimal(0), None, False),
}


def admissible_relations(schema: Schema, from_cls: Term, to_cls: Term) -> list:
    """Object relations whose domain admits from_cls and whose range admits
    to_cls under subclass closure, sorted by label."""
    src = set(subclass_closure(schema, from_cls))
    dst = set(subclass_closure(schema, to_cls))
    rels = [
        r for r in schema.relations
        if not r.literal_valued and r.domain in src and r.range in dst
    ]
    rels.sort(key=lambda r: (r.label.lower(), r.term.qname))
    return rels


class ApiError(GeoFaultError):
    def __init__(self, status: int, code: str, message: str, position=None):
        self.status = status
        self.code = code
        self.message = message
        self.position = position
        super().__init__(message)


@dataclass
class ImageRef:
    id: str
    media_type: str
    width: int
    height: int
    checksum: str

    def to_dict(self) -> dict:
        return {"id": self.id, "media_type": self.media_type,
                "width": self.width, "height": self.height,
                "checksum": self.checksum}


@dataclass
class Annotation:
    id: str
    image: str
    region: dict
    class_term: str
    instance: str
    label: str

    def to_dict(self) -> dict:
        return {"id": self.id, "image": self.image, "region": self.region,
                "class": self.class_term, "instance": self.instance,
                "label": self.label}


@dataclass
class Project:
    id: str
    name: str
    created_at: str
    images: list[ImageRef] = field(default_factory=list)
    annotations: list[Annotation] = field(default_factory=list)
    counter: int = 0
    graph: Graph = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    _materialized: Graph = None
    _revision: int = 0
    _materialized_rev: int = -1

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "created_at": self.created_at,
            "images": [i.to_dict() for i in self.images],
            "annotations": [a.to_dict() for a in self.annotations],
        }


class ProjectStore:
    """Directory-backed project persistence; one lock per project
    serializes writers, readers use materialized snapshots."""

    def __init__(self, root: Path, schema: Schema):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.schema = schema
        self.rules = compile_rules(schema)
        self.shapes = compile_shapes(schema)
        self._projects: dict[str, Project] = {}
        self._load_all()

    # -- persistence -------------------------------------------------------

    def _dir(self, project_id: str) -> Path:
        return self.root / project_id

    def _load_all(self):
        for meta_path in sorted(self.root.glob("*/project.json")):
            data = json.loads(meta_path.read_text(encoding="utf-8"))
            project = Project(
                id=data["id"], name=data["name"], created_at=data["created_at"],
                images=[ImageRef(**i) for i in data["images"]],
                annotations=[
                    Annotation(id=a["id"], image=a["image"], region=a["region"],
                               class_term=a["class"], instance=a["instance"],
                               label=a["label"])
                    for a in data["annotations"]
                ],
                counter=data.get("counter", 0),
            )
            graph_path = meta_path.parent / "graph.ttl"
            doc = parse_turtle(graph_path.read_text(encoding="utf-8"),
                               source_name=f"{project.id}/graph.ttl")
            project.graph = graph_from_document(doc, self.schema, ASSERTED)
            self._projects[project.id] = project

    def _save(self, project: Project):
        d = self._dir(project.id)
        d.mkdir(parents=True, exist_ok=True)
        payload = project.to_dict()
        payload["counter"] = project.counter
        (d / "project.json").write_text(json.dumps(payload, indent=2), "utf-8")
        (d / "graph.ttl").write_text(serialize_turtle(project.graph), "utf-8")

    # -- lifecycle ---------------------------------------------------------

    def create(self, name: str) -> Project:
        pid = "p" + uuid.uuid4().hex[:10]
        project = Project(
            id=pid, name=name,
            created_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            graph=Graph(self.schema),
        )
        self._projects[pid] = project
        self._save(project)
        return project

    def get(self, project_id: str) -> Project:
        project = self._projects.get(project_id)
        if project is None:
            raise ApiError(404, "NoSuchProject", f"no project {project_id!r}")
        return project

    # -- operations ---------------------------------------------------------

    def upload_image(self, project: Project, data: bytes, media_type: str) -> ImageRef:
        if media_type not in _MEDIA_TYPES:
            raise ApiError(415, "UnsupportedMediaType",
                           f"unsupported media type: {media_type}")
        from PIL import Image, UnidentifiedImageError

        try:
            with Image.open(io.BytesIO(data)) as img:
                img.load()
                width, height = img.size
        except (UnidentifiedImageError, OSError):
            raise ApiError(400, "CorruptImage", "image bytes do not decode") from None
        if width < 1 or height < 1:
            raise ApiError(400, "CorruptImage", "image has no pixels")
        checksum = hashlib.sha256(data).hexdigest()
        with project.lock:
            blob_dir = self._dir(project.id) / "blobs"
            blob_dir.mkdir(parents=True, exist_ok=True)
            blob = blob_dir / checksum
            if not blob.exists():
                blob.write_bytes(data)
            for ref in project.images:
                if ref.checksum == checksum:
                    return ref
            ref = ImageRef(
                id=f"img{len(project.images) + 1}",
                media_type=_MEDIA_TYPES[media_type],
                width=width, height=height, checksum=checksum,
            )
            project.images.append(ref)
            self._save(project)
        return ref

    def _image(self, project: Project, image_id: str) -> ImageRef:
        for ref in project.images:
            if ref.id == image_id:
                return ref
        raise ApiError(404, "NoSuchImage", f"no image {image_id!r}")

    def _check_region(self, region: dict, image: ImageRef):
        kind = region.get("kind")
        if kind == "point":
            points = [(region.get("x"), region.get("y"))]
        elif kind == "polygon":
            points = [tuple(p) for p in region.get("points", [])]
            if len(points) < 3:
                raise ApiError(400, "RegionOutOfBounds",
                               "polygons need at least 3 vertices")
        else:
            raise ApiError(400, "RegionOutOfBounds",
                           f"unknown region kind: {kind!r}")
        for x, y in points:
            if not (isinstance(x, (int, float)) and isinstance(y, (int, float))):
                raise ApiError(400, "RegionOutOfBounds", "vertices must be numeric")
            if not (0 <= x <= image.width and 0 <= y <= image.height):
                raise ApiError(400, "RegionOutOfBounds",
                               f"vertex ({x}, {y}) outside {image.width}x{image.height}")

    def _parse_term(self, text: str) -> Term:
        m = re.match(r"([A-Za-z][A-Za-z0-9_-]*):([A-Za-z][A-Za-z0-9_]*)\Z", text or "")
        if m:
            return Term(m.group(1), m.group(2))
        try:
            return self.schema.resolve_local(text or "")
        except GeoFaultError as exc:
            raise ApiError(400, "UnknownTerm", str(exc)) from None

    def _touch(self, project: Project):
        project._revision += 1
        self._save(project)

    def add_annotation(self, project: Project, image_id: str, region: dict,
                       class_text: str, label: str | None) -> Annotation:
        term = self._parse_term(class_text)
        if not self.schema.is_class(term):
            raise ApiError(400, "UnknownTerm", f"unknown class: {term.qname}")
        if not self.schema.class_def(term).user_facing:
            raise ApiError(400, "NotUserFacingClass",
                           f"{term.qname} is not offered for annotation")
        with project.lock:
            image = self._image(project, image_id)
            self._check_region(region, image)
            project.counter += 1
            instance = Term("geofault-proj", f"{project.id}_{project.counter}")
            annotation = Annotation(
                id=f"a{project.counter}", image=image.id, region=region,
                class_term=term.qname, instance=instance.qname,
                label=label or f"{self.schema.class_def(term).label} {project.counter}",
            )
            project.graph.add(instance, RDF_TYPE, term)
            project.annotations.append(annotation)
            self._touch(project)
        return annotation

    def _annotation(self, project: Project, annotation_id: str) -> Annotation:
        for a in project.annotations:
            if a.id == annotation_id:
                return a
        raise ApiError(404, "NoSuchAnnotation", f"no annotation {annotation_id!r}")

    def suggest_links(self, project: Project, from_id: str, to_id: str) -> list:
        src = self._annotation(project, from_id)
        dst = self._annotation(project, to_id)
        ns, local = src.class_term.split(":", 1)
        src_cls = Term(ns, local)
        ns, local = dst.class_term.split(":", 1)
        dst_cls = Term(ns, local)
        return admissible_relations(self.schema, src_cls, dst_cls)

    def add_link(self, project: Project, from_id: str, relation_text: str,
                 to_id: str) -> dict:
        rel_term = self._parse_term(relation_text)
        if not self.schema.is_relation(rel_term):
            raise ApiError(400, "UnknownTerm", f"unknown relation: {rel_term.qname}")
        src = self._annotation(project, from_id)
        dst = self._annotation(project, to_id)
        admissible = {r.term for r in self.suggest_links(project, from_id, to_id)}
        if rel_term not in admissible:
            raise ApiError(409, "InadmissibleRelation",
                           f"{rel_term.qname} does not admit "
                           f"{src.class_term} -> {dst.class_term}")
        with project.lock:
            ns, local = src.instance.split(":", 1)
            s = Term(ns, local)
            ns, local = dst.instance.split(":", 1)
            o = Term(ns, local)
            project.graph.add(s, rel_term, o)
            self._touch(project)
        return {"from": src.instance, "relation": rel_term.qname, "to": dst.instance}

    def set_quality(self, project: Project, annotation_id: str, kind_text: str,
                    magnitude, unit: str, also_of: str | None = None) -> dict:
        kind = self._parse_term(kind_text)
        if not self.schema.is_class(kind):
            raise ApiError(400, "UnknownTerm", f"unknown quality class: {kind.qname}")
        bounds = _QUALITY_RANGES.get(kind.qname)
        if bounds is None:
            raise ApiError(400, "UnknownTerm",
                           f"{kind.qname} is not a numeric quality kind")
        want_unit, lo, hi, hi_exclusive = bounds
        if unit != want_unit:
            raise ApiError(400, "ValueOutOfRange",
                           f"{kind.qname} is measured in {want_unit}s")
        try:
            value = Decimal(str(magnitude))
        except Exception:
            raise ApiError(400, "ValueOutOfRange", "magnitude must be numeric") from None
        if not value.is_finite() or value < lo or (
            hi is not None and (value > hi or (hi_exclusive and value == hi))
        ):
            raise ApiError(400, "ValueOutOfRange",
                           f"{kind.qname} of {value} {unit} is out of range")
        annotation = self._annotation(project, annotation_id)
        with project.lock:
            ns, local = annotation.instance.split(":", 1)
            subject = Term(ns, local)
            project.counter += 1
            value_node = Term("geofault-proj", f"{project.id}_{project.counter}")
            g = project.graph
            if kind.qname in ("geofault:FaultDip", "geofault:FaultAzimuth"):
                # orientation qualities inhere in the surface's spatial region
                location = Term("geofault-proj", f"{project.id}_loc_{annotation.id}")
                if not g.contains(subject, Term("geofault", "occupies"), location):
                    g.add(location, RDF_TYPE, Term("geofault", "FaultSurfaceLocation"))
                    g.add(subject, Term("geofault", "occupies"), location)
                bearer = location
            else:
                bearer = subject
            cls = dip_band(value) if kind.qname == "geofault:FaultDip" else kind
            g.add(value_node, RDF_TYPE, cls)
            g.add(value_node, Term("geofault", "quality_of"), bearer)
            g.add(value_node, Term("geofault", "has_magnitude"),
                  decimal_literal(value, unit))
            if also_of:
                other = self._annotation(project, also_of)
                ns, local = other.instance.split(":", 1)
                g.add(value_node, Term("geofault", "quality_of"), Term(ns, local))
            self._touch(project)
        return {"instance": value_node.qname, "class": cls.qname,
                "magnitude": str(value), "unit": unit}

    # -- status / query ------------------------------------------------------

    def materialized(self, project: Project) -> Graph:
        with project.lock:
            if project._materialized_rev != project._revision:
                snap = project.graph.snapshot()
                project._materialized = materialize(snap, self.rules)
                project._materialized_rev = project._revision
            return project._materialized

    def status(self, project: Project) -> dict:
        m = self.materialized(project)
        return {
            "consistency": check_consistency(m, self.schema).to_json_dict(),
            "validation": validate(m, self.shapes).to_json_dict(),
            "graph": export_structured(m),
        }

    def run_query(self, project: Project, text: str) -> dict:
        try:
            q = parse_query(text, self.schema)
        except ParseError as exc:
            raise ApiError(400, "ParseError", exc.message,
                           position={"line": exc.line, "column": exc.column})
        m = self.materialized(project)
        answers = evaluate(m, q)
        payload = {"projection": list(q.projection), "bindings": [], "explanations": []}
        for b in answers:
            payload["bindings"].append({v: str(b[v]) if isinstance(b[v], Literal)
                                        else b[v].qname for v in q.projection})
            edges = explain_answer(m, q, b).edges
            payload["explanations"].append([
                {"from": e.subject.qname, "rel": e.predicate.qname,
                 "to": e.object.qname if isinstance(e.object, Term) else str(e.object)}
                for e in edges
            ])
        return payload


# -- HTTP layer ----------------------------------------------------------------


def _vocabulary_payload(schema: Schema) -> dict:
    classes = []
    for cls, rels in annotation_vocabulary(schema):
        classes.append({
            "term": cls.term.qname,
            "label": cls.label,
            "definition": cls.definition_text,
            "relations": [
                {
                    "term": r.term.qname,
                    "label": r.label,
                    "domain": r.domain.qname,
                    "range": r.range.qname,
                    "literal": r.literal_valued,
                }
                for r in rels
            ],
        })
    return {"classes": classes}


def create_app(data_dir: str | os.PathLike | None = None,
               schema: Schema | None = None) -> FastAPI:
    schema = schema or load_builtin_schema()
    root = Path(data_dir or os.environ.get(DATA_DIR_ENV) or ".geofault-data")
    store = ProjectStore(root, schema)
    app = FastAPI(title="geofault annotation service")
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        body = {"error": {"code": exc.code, "message": exc.message}}
        if exc.position:
            body["error"]["position"] = exc.position
        return JSONResponse(status_code=exc.status, content=body)

    @app.post("/projects", status_code=201)
    async def create_project(payload: dict):
        name = (payload or {}).get("name", "")
        if not name:
            raise ApiError(400, "BadRequest", "project name is required")
        return store.create(name).to_dict()

    @app.get("/projects/{project_id}")
    async def get_project(project_id: str):
        return store.get(project_id).to_dict()

    @app.post("/projects/{project_id}/images", status_code=201)
    async def upload_image(project_id: str, request: Request):
        project = store.get(project_id)
        data = await request.body()
        media_type = request.headers.get("content-type", "")
        return store.upload_image(project, data, media_type).to_dict()

    @app.get("/vocabulary")
    async def vocabulary():
        return _vocabulary_payload(schema)

    @app.post("/projects/{project_id}/annotations", status_code=201)
    async def add_annotation(project_id: str, payload: dict):
        project = store.get(project_id)
        return store.add_annotation(
            project,
            payload.get("image", ""),
            payload.get("region", {}),
            payload.get("class", ""),
            payload.get("label"),
        ).to_dict()

    @app.post("/projects/{project_id}/links:suggest")
    async def suggest(project_id: str, payload: dict):
        project = store.get(project_id)
        rels = store.suggest_links(project, payload.get("from", ""),
                                   payload.get("to", ""))
        return {"relations": [
            {"term": r.term.qname, "label": r.label,
             "domain": r.domain.qname, "range": r.range.qname}
            for r in rels
        ]}

    @app.post("/projects/{project_id}/links", status_code=201)
    async def add_link(project_id: str, payload: dict):
        project = store.get(project_id)
        return store.add_link(project, payload.get("from", ""),
                              payload.get("relation", ""), payload.get("to", ""))

    @app.post("/projects/{project_id}/qualities", status_code=201)
    async def set_quality(project_id: str, payload: dict):
        project = store.get(project_id)
        return store.set_quality(
            project,
            payload.get("annotation", ""),
            payload.get("kind", ""),
            payload.get("magnitude"),
            payload.get("unit", ""),
            payload.get("also_of"),
        )

    @app.get("/projects/{project_id}/status")
    async def status(project_id: str):
        return store.status(store.get(project_id))

    @app.post("/projects/{project_id}/query")
    async def run_query(project_id: str, payload: dict):
        project = store.get(project_id)
        return store.run_query(project, payload.get("query", ""))

    @app.get("/projects/{project_id}/export")
    async def export(project_id: str, format: str = "ttl"):
        project = store.get(project_id)
        if format == "json":
            return export_structured(store.materialized(project))
        if format != "ttl":
            raise ApiError(400, "BadRequest", f"unknown format: {format!r}")
        return Response(serialize_turtle(project.graph), media_type="text/turtle")

    _mount_ui(app)
    return app


def _mount_ui(app: FastAPI):
    """Serve the built frontend when it exists next to the repo root."""
    here = Path(__file__).resolve()
    for parent in here.parents:
        dist = parent / "frontend" / "dist"
        if (dist / "index.html").exists():
            from fastapi.staticfiles import StaticFiles

            app.mount("/ui", StaticFiles(directory=dist, html=True), name="ui")
            return
