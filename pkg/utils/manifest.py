"""
Manifest loader - YAML description of (X, t) plus compute options

    manifold:
      chi: 4
      sigma: 0
      intersection: [[0, 1], [1, 0]]
    spinu:
      lambda: [0, 0]
      kappa: 1
      w: [0, 0]          # optional, defaults to zero
    compute:             # optional section
      max_order: 12
      symbolic: false
      format: text
"""

from dataclasses import dataclass
from pathlib import Path

import yaml

from topology.cohomology import FourManifold
from topology.index_theory import SpinUStructure
from utils.errors import ManifestError
from utils.logger import get_logger

SCHEMA = {
    'manifold': {'chi', 'sigma', 'intersection', 'name'},
    'spinu': {'lambda', 'kappa', 'w'},
    'compute': {'max_order', 'symbolic', 'format'},
}
REQUIRED = {
    'manifold': {'chi', 'sigma', 'intersection'},
    'spinu': {'lambda', 'kappa'},
}
FORMATS = ('text', 'json', 'csv')


@dataclass(frozen=True)
class Manifest:
    manifold: FourManifold
    spinu: SpinUStructure
    max_order: int = 12
    symbolic: bool = False
    format: str = 'text'
    source: str = ''


def _integer(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ManifestError(f"{where} must be an integer, got {value!r}")
    return value


def _vector(value, where):
    if not isinstance(value, list):
        raise ManifestError(f"{where} must be a list of integers, got {value!r}")
    return [_integer(v, f"{where}[{i}]") for i, v in enumerate(value)]


def parse_manifest(data, source='<memory>') -> Manifest:
    """Validate a decoded manifest; all manifold and spin-u invariants are re-checked"""
    if not isinstance(data, dict):
        raise ManifestError(f"{source}: top level must be a mapping")
    unknown = set(data) - set(SCHEMA)
    if unknown:
        raise ManifestError(f"{source}: unknown section(s) {sorted(unknown)}")
    for section, keys in SCHEMA.items():
        body = data.get(section)
        if body is None:
            if section in REQUIRED:
                raise ManifestError(f"{source}: missing section {section!r}")
            continue
        if not isinstance(body, dict):
            raise ManifestError(f"{source}: section {section!r} must be a mapping")
        extra = set(body) - keys
        if extra:
            raise ManifestError(f"{source}: unknown key(s) {sorted(extra)} in {section!r}")
        missing = REQUIRED.get(section, set()) - set(body)
        if missing:
            raise ManifestError(f"{source}: missing key(s) {sorted(missing)} in {section!r}")

    m = data['manifold']
    rows = m['intersection'] or []
    if not isinstance(rows, list):
        raise ManifestError(f"{source}: manifold.intersection must be a list of rows")
    matrix = [_vector(row, f"manifold.intersection[{i}]") for i, row in enumerate(rows)]
    manifold = FourManifold(_integer(m['chi'], 'manifold.chi'),
                            _integer(m['sigma'], 'manifold.sigma'),
                            matrix, name=str(m.get('name', '')))

    s = data['spinu']
    lam = _vector(s['lambda'] if s['lambda'] is not None else [], 'spinu.lambda')
    w = _vector(s['w'], 'spinu.w') if s.get('w') is not None else [0] * manifold.b2
    spinu = SpinUStructure(manifold, tuple(lam), _integer(s['kappa'], 'spinu.kappa'), tuple(w))

    c = data.get('compute') or {}
    max_order = _integer(c.get('max_order', 12), 'compute.max_order')
    if max_order < 1:
        raise ManifestError(f"{source}: compute.max_order must be >= 1")
    symbolic = c.get('symbolic', False)
    if not isinstance(symbolic, bool):
        raise ManifestError(f"{source}: compute.symbolic must be true or false")
    fmt = c.get('format', 'text')
    if fmt not in FORMATS:
        raise ManifestError(f"{source}: compute.format must be one of {FORMATS}")

    return Manifest(manifold=manifold, spinu=spinu, max_order=max_order,
                    symbolic=symbolic, format=fmt, source=source)


def load_manifest(path) -> Manifest:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ManifestError(f"{path}: invalid YAML: {exc}") from exc
    get_logger().debug(f"Loaded manifest {path}")
    return parse_manifest(data, source=str(path))
