import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laurent_duality.corpus import random_module
from laurent_duality.finmod import is_isomorphic
from laurent_duality.formats import (
    InputError,
    LoadedCrossed,
    LoadedZalg,
    algebra_from_doc,
    algebra_to_doc,
    bundled,
    digest,
    load_algebra,
    load_module,
    module_from_doc,
    module_to_doc,
    write_json,
)
from laurent_duality.scalars import Field
from laurent_duality.zalg import matrix_algebra, upper_triangular

ALGEBRAS = ["group_z2.alg", "hecke_a1.alg", "klein_twisted.alg", "m2.alg", "ut2.alg", "z2_cross.alg", "z3_cross.alg"]


@pytest.mark.parametrize("name", ALGEBRAS)
def test_bundled_algebras_load(name):
    loaded = load_algebra(bundled(name))
    assert isinstance(loaded, LoadedCrossed if "cross" in name or "klein" in name else LoadedZalg)
    if isinstance(loaded, LoadedZalg):
        assert not loaded.algebra.validate()


@pytest.mark.parametrize("name", ["k_a_d1.mod", "k_a_d2.mod"])
def test_bundled_modules_load(name):
    m = load_module(bundled(name))
    assert m.dim == 1


def test_field_override():
    m = load_module(bundled("k_a_d1.mod"), Field.cyclotomic(3))
    assert m.field == Field.cyclotomic(3)


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 3, 4]), st.integers(1, 2), st.integers(0, 3))
@settings(max_examples=20)
def test_module_round_trip(seed, n, d, dim):
    f = Field.rational() if n == 1 else Field.cyclotomic(n)
    m = random_module(f, d, dim, random.Random(seed)) if dim else None
    if m is None:
        return
    back = module_from_doc(json.loads(json.dumps(module_to_doc(m))))
    assert back.ops == m.ops and is_isomorphic(back, m)


def test_algebra_round_trip(tmp_path):
    for a in (matrix_algebra(Field.rational(), 2), upper_triangular(Field.cyclotomic(4)),
              load_algebra(bundled("hecke_a1.alg")).algebra):
        p = tmp_path / f"{a.name}.alg"
        write_json(algebra_to_doc(a), p)
        b = load_algebra(p).algebra
        assert b.products == a.products and b.labels == a.labels and b.idempotents == a.idempotents


def _write(tmp_path, doc, name="x.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


@pytest.mark.parametrize("doc", [
    "{not json",
    {"kind": "module", "field": "Q", "rank": 1, "dim": 1},                        # operators missing
    {"kind": "module", "field": "Q", "rank": 0, "dim": 1, "operators": []},       # rank below 1
    {"kind": "module", "field": "F7", "rank": 1, "dim": 1, "operators": [[["1"]]]},
    {"kind": "module", "field": "Q", "rank": 1, "dim": 1, "operators": [[["0"]]]},  # not invertible
    {"kind": "module", "field": "Q", "rank": 1, "dim": 1, "operators": [[["1/0"]]]},
    {"kind": "module", "field": "Q", "rank": 2, "dim": 2,
     "operators": [[["1", "1"], ["0", "1"]], [["1", "0"], ["1", "1"]]]},          # do not commute
])
def test_bad_modules_rejected(tmp_path, doc):
    with pytest.raises(InputError):
        load_module(_write(tmp_path, doc))


def test_missing_file():
    with pytest.raises(InputError):
        load_module("/nonexistent/module.mod")


def test_bad_algebras_rejected(tmp_path):
    good = json.loads(bundled("ut2.alg").read_text())
    bad_index = dict(good, products=good["products"] + [[0, 0, 9, "1"]])
    with pytest.raises(InputError):
        load_algebra(_write(tmp_path, bad_index))
    nonassoc = dict(good, products=[p for p in good["products"] if p[:2] != [1, 2]] + [[1, 2, 0, "1"]])
    with pytest.raises(InputError):
        load_algebra(_write(tmp_path, nonassoc))
    with pytest.raises(InputError):
        load_algebra(_write(tmp_path, dict(good, kind="other")))
    crossed = json.loads(bundled("z2_cross.alg").read_text())
    with pytest.raises(InputError):
        load_algebra(_write(tmp_path, dict(crossed, generators=[["2"]])))
    klein = json.loads(bundled("klein_twisted.alg").read_text())
    broken = [row[:] for row in klein["cocycle"]]
    broken[3][3] = "2"
    with pytest.raises(InputError):
        load_algebra(_write(tmp_path, dict(klein, cocycle=broken)))
    with pytest.raises(InputError):
        algebra_from_doc(dict(crossed, modules=[{"name": "v", "induced_at": ["0"]}]))


def test_digest_is_stable(tmp_path):
    p = _write(tmp_path, {"a": 1})
    assert digest(p) == digest(p) and digest(p).startswith("sha256:")
