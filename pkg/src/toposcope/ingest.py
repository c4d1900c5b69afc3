"""Topology file parsing: plain edge lists and a GraphML subset.

Edge lists are whitespace-separated ``u v [capacity]`` lines; ``#`` starts
a comment. The GraphML reader handles the node/edge/data structure used by
operator-published topology archives: per-edge link speeds under a
configurable attribute key, optional unit suffixes (G/M/K) and ``lo-hi``
capacity ranges resolved by a min/max/mean policy. Namespaces are ignored
by matching local element names only.

Node labels are mapped to dense integer ids in first-appearance order.
Parallel edges are collapsed (capacities summed), self-loops dropped, and
by default the giant connected component is extracted before the topology
is handed to the analyses.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import asdict, dataclass

from .errors import IngestError
from .graph import Topology, build_topology, connected_components, extract_gcc

RANGE_POLICIES = ("min", "max", "mean")

_UNIT_MULTIPLIERS = {"": 1.0, "G": 1e9, "M": 1e6, "K": 1e3}


@dataclass
class IngestConfig:
    format: str = "edgelist"  # or "graphml"
    capacity_key: str = "LinkSpeed"
    unit_key: str = "LinkSpeedUnits"
    range_policy: str = "mean"
    default_capacity: float = 1.0
    extract_gcc: bool = True

    def __post_init__(self):
        if self.default_capacity <= 0:
            raise IngestError("default_capacity must be > 0")
        if self.range_policy not in RANGE_POLICIES:
            raise IngestError(f"range_policy must be one of {RANGE_POLICIES}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class IngestReport:
    nodes_read: int = 0
    edges_read: int = 0
    multi_edges_collapsed: int = 0
    self_loops_dropped: int = 0
    nodes_outside_gcc: int = 0
    capacity_defaults_applied: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _as_text(data) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _finish(labels, edges, caps_raw, cfg, report):
    """Apply capacity defaults, build the topology, extract the GCC."""
    if not labels:
        raise IngestError("empty usable content")
    capacitated = any(c is not None for c in caps_raw)
    caps = None
    if capacitated:
        caps = []
        for c in caps_raw:
            if c is None:
                report.capacity_defaults_applied += 1
                caps.append(cfg.default_capacity)
            else:
                caps.append(c)
    g, stats = build_topology(len(labels), edges, capacities=caps, labels=list(labels))
    report.nodes_read = len(labels)
    report.multi_edges_collapsed = stats.multi_edges_collapsed
    report.self_loops_dropped = stats.self_loops_dropped
    if cfg.extract_gcc:
        if g.n == 0:
            raise IngestError("empty usable content")
        labeling = connected_components(g)
        report.nodes_outside_gcc = g.n - labeling.gcc_size
        if labeling.num_components > 1:
            g = extract_gcc(g)
    return g, report


def parse_edgelist(data, cfg: IngestConfig | None = None) -> tuple[Topology, IngestReport]:
    """Parse a ``u v [capacity]`` edge list into a Topology."""
    cfg = cfg or IngestConfig()
    report = IngestReport()
    labels: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    caps_raw: list[float | None] = []

    def node_id(label: str) -> int:
        if label not in labels:
            labels[label] = len(labels)
        return labels[label]

    for lineno, raw in enumerate(_as_text(data).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise IngestError(f"line {lineno}: expected 'u v [capacity]', got {raw!r}")
        u = node_id(tokens[0])
        v = node_id(tokens[1])
        cap = None
        if len(tokens) == 3:
            try:
                cap = float(tokens[2])
            except ValueError:
                raise IngestError(f"line {lineno}: bad capacity {tokens[2]!r}") from None
            if not cap > 0:
                raise IngestError(f"line {lineno}: capacity must be > 0, got {cap}")
        report.edges_read += 1
        edges.append((u, v))
        caps_raw.append(cap)
    return _finish(labels, edges, caps_raw, cfg, report)


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _byte_offset(text: str, line: int, col: int) -> int:
    lines = text.splitlines(keepends=True)
    return sum(len(l.encode("utf-8")) for l in lines[: line - 1]) + col


def _parse_capacity_value(text: str, cfg: IngestConfig, edge_desc: str) -> float:
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    if "-" in text[1:]:  # allow a leading minus sign to fail as plain float
        lo_s, hi_s = text.split("-", 1)
        try:
            lo, hi = float(lo_s), float(hi_s)
        except ValueError:
            raise IngestError(f"edge {edge_desc}: bad capacity value {text!r}") from None
        if cfg.range_policy == "min":
            return min(lo, hi)
        if cfg.range_policy == "max":
            return max(lo, hi)
        return (lo + hi) / 2.0
    raise IngestError(f"edge {edge_desc}: bad capacity value {text!r}")


def parse_graphml(data, cfg: IngestConfig | None = None) -> tuple[Topology, IngestReport]:
    """Parse the GraphML node/edge/data subset into a Topology."""
    cfg = cfg or IngestConfig()
    report = IngestReport()
    text = _as_text(data)
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line, col = exc.position
        offset = _byte_offset(text, line, col)
        raise IngestError(f"XML parse error at byte {offset}: {exc.msg}") from None

    # <key id="dNN" attr.name="LinkSpeed"/> declarations map logical names
    # to the short ids used by <data key="dNN"> elements
    key_ids: dict[str, str] = {}
    for el in root.iter():
        if _local_name(el.tag) == "key":
            name = el.get("attr.name")
            kid = el.get("id")
            if name and kid:
                key_ids[name] = kid
    cap_keys = {cfg.capacity_key, key_ids.get(cfg.capacity_key)}
    unit_keys = {cfg.unit_key, key_ids.get(cfg.unit_key)}

    labels: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    caps_raw: list[float | None] = []
    for el in root.iter():
        name = _local_name(el.tag)
        if name == "node":
            nid = el.get("id")
            if nid is None:
                raise IngestError("node element without id attribute")
            if nid not in labels:
                labels[nid] = len(labels)
        elif name == "edge":
            su, sv = el.get("source"), el.get("target")
            desc = f"{su!r}-{sv!r}"
            if su is None or sv is None:
                raise IngestError(f"edge {desc} lacks source/target")
            if su not in labels:
                raise IngestError(f"edge {desc} references undeclared node {su!r}")
            if sv not in labels:
                raise IngestError(f"edge {desc} references undeclared node {sv!r}")
            cap_text = None
            unit_text = None
            for child in el:
                if _local_name(child.tag) != "data":
                    continue
                key = child.get("key")
                if key in cap_keys:
                    cap_text = (child.text or "").strip()
                elif key in unit_keys:
                    unit_text = (child.text or "").strip()
            cap = None
            if cap_text is not None:
                unit = (unit_text or "").strip().upper()
                if unit not in _UNIT_MULTIPLIERS:
                    raise IngestError(f"edge {desc}: unknown capacity unit {unit_text!r}")
                cap = _parse_capacity_value(cap_text, cfg, desc) * _UNIT_MULTIPLIERS[unit]
                if not cap > 0:
                    raise IngestError(f"edge {desc}: capacity must be > 0, got {cap}")
            report.edges_read += 1
            edges.append((labels[su], labels[sv]))
            caps_raw.append(cap)
    return _finish(labels, edges, caps_raw, cfg, report)


def load_topology(path, cfg: IngestConfig | None = None) -> tuple[Topology, IngestReport]:
    """Read a topology file, picking the parser from cfg.format or the suffix.

    Parse errors are re-raised with the file name prefixed.
    """
    path = str(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if cfg is None:
        fmt = "graphml" if path.lower().endswith(".graphml") else "edgelist"
        cfg = IngestConfig(format=fmt)
    try:
        if cfg.format == "graphml":
            return parse_graphml(data, cfg)
        if cfg.format == "edgelist":
            return parse_edgelist(data, cfg)
    except IngestError as exc:
        raise IngestError(f"{path}: {exc}") from None
    raise IngestError(f"unknown input format {cfg.format!r}")


def write_edgelist(g: Topology) -> str:
    """Serialize a topology back to edge-list text (round-trip safe)."""
    for label in g.labels:
        if "#" in label or any(ch.isspace() for ch in label):
            raise IngestError(f"label {label!r} cannot be written as an edge list")
    lines = []
    for u in range(g.n):
        row = g.neighbors(u)
        caps = g.edge_capacities(u) if g.capacitated else None
        for i, v in enumerate(row.tolist()):
            if v > u:
                if caps is None:
                    lines.append(f"{g.labels[u]} {g.labels[v]}")
                else:
                    # repr of a Python float round-trips exactly
                    lines.append(f"{g.labels[u]} {g.labels[v]} {float(caps[i])!r}")
    return "\n".join(lines) + "\n"
