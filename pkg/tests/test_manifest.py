import pytest

from utils.errors import ManifestError, NonIntegralIndex, NotUnimodular
from utils.manifest import load_manifest, parse_manifest


def base_data(**overrides):
    data = {
        'manifold': {'chi': 4, 'sigma': 0, 'intersection': [[0, 1], [1, 0]]},
        'spinu': {'lambda': [0, 0], 'kappa': 1},
    }
    data.update(overrides)
    return data


def test_load_full_manifest(fixtures_dir):
    manifest = load_manifest(fixtures_dir / 's2xs2.yaml')
    assert manifest.manifold.name == 'S2xS2'
    assert manifest.manifold.b2 == 2
    assert manifest.spinu.na == -1
    assert manifest.spinu.w == (0, 0)
    assert (manifest.max_order, manifest.symbolic, manifest.format) == (12, False, 'text')


def test_defaults():
    manifest = parse_manifest(base_data())
    assert manifest.max_order == 12
    assert manifest.symbolic is False
    assert manifest.format == 'text'
    assert manifest.spinu.w == (0, 0)


def test_compute_section_is_read():
    manifest = parse_manifest(base_data(compute={'max_order': 6, 'symbolic': True, 'format': 'json'}))
    assert (manifest.max_order, manifest.symbolic, manifest.format) == (6, True, 'json')


def test_s4_has_empty_form():
    data = {'manifold': {'chi': 2, 'sigma': 0, 'intersection': []},
            'spinu': {'lambda': [], 'kappa': 0}}
    manifest = parse_manifest(data)
    assert manifest.manifold.b2 == 0
    assert manifest.spinu.na == 0


@pytest.mark.parametrize('data', [
    base_data(extra={}),
    base_data(compute={'order': 3}),
    base_data(compute={'format': 'xml'}),
    base_data(compute={'max_order': 0}),
    base_data(compute={'symbolic': 'yes'}),
    {'manifold': {'chi': 4, 'sigma': 0, 'intersection': [[0, 1], [1, 0]]}},
    base_data(spinu={'kappa': 1}),
    base_data(spinu={'lambda': [0, 0], 'kappa': 1.5}),
    base_data(manifold={'chi': 4, 'sigma': 0, 'intersection': 'H'}),
    [1, 2, 3],
])
def test_schema_violations(data):
    with pytest.raises(ManifestError):
        parse_manifest(data)


def test_unknown_key_fixture(fixtures_dir):
    with pytest.raises(ManifestError, match='genus'):
        load_manifest(fixtures_dir / 'unknown_key.yaml')


def test_validation_errors_pass_through(fixtures_dir):
    with pytest.raises(NotUnimodular):
        load_manifest(fixtures_dir / 'not_unimodular.yaml')
    with pytest.raises(NonIntegralIndex):
        load_manifest(fixtures_dir / 'fractional_index.yaml')


def test_invalid_yaml(tmp_path):
    path = tmp_path / 'broken.yaml'
    path.write_text('manifold: [unclosed\n', encoding='utf-8')
    with pytest.raises(ManifestError, match='invalid YAML'):
        load_manifest(path)


def test_missing_file(tmp_path):
    with pytest.raises(ManifestError, match='cannot read'):
        load_manifest(tmp_path / 'nope.yaml')
