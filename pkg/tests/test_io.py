import copy
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bump, h_theta, hq, kc2, sw
from quasihopf.algebra import verify_quasi_bialgebra
from quasihopf.builders import cyclic_qha
from quasihopf.errors import FormatError
from quasihopf.io import AlgebraFile, dump, dumps, load, loads, to_dict
from quasihopf.modules import regular_module


def documents():
    T = h_theta("sw1")
    return {
        "H_q(6)": AlgebraFile(hq(6)),
        "H_q(3) N=6": AlgebraFile(cyclic_qha(3, cyclotomic_order=6)),
        "kC2+R": AlgebraFile(kc2()[0], kc2()[1].r, kc2()[0].basis(1)),
        "Sweedler": AlgebraFile(sw(1)[0], sw(1)[1].r),
        "H(theta)": AlgebraFile(T.algebra, T.r.r, T.eta.eta, {"regular": regular_module(T.algebra)}),
    }


@pytest.mark.parametrize("name", list(documents()))
def test_round_trip_is_bit_identical(name, tmp_path):
    doc = documents()[name]
    text = dumps(doc)
    again = dumps(loads(text))
    assert again == text
    path = tmp_path / "a.json"
    dump(doc, path)
    assert path.read_text(encoding="utf-8") == text
    assert dumps(load(path)) == text


def test_loaded_algebra_is_equal():
    doc = loads(dumps(documents()["kC2+R"]))
    H = doc.algebra
    assert H.phi == H.one(3)
    assert doc.r_matrix.coeffs == kc2()[1].r.coeffs
    assert doc.eta == H.basis(1)


def test_missing_inverse_is_derived():
    obj = to_dict(AlgebraFile(hq(3)))
    del obj["phi_inv"]
    doc = loads(json.dumps(obj))
    assert doc.algebra.phi_inv.coeffs == hq(3).phi_inv.coeffs


def test_singular_reassociator_is_format_error():
    obj = to_dict(AlgebraFile(hq(2)))
    del obj["phi_inv"]
    obj["phi"] = []
    with pytest.raises(FormatError):
        loads(json.dumps(obj))


def test_mismatched_inverse_reaches_verifier():
    H = hq(3)
    obj = to_dict(AlgebraFile(H))
    obj["phi_inv"] = to_dict(AlgebraFile(H))["phi_inv"][1:]
    doc = loads(json.dumps(obj))
    assert not verify_quasi_bialgebra(doc.algebra).get("reassociator_invertible").passed


@pytest.mark.parametrize("mutation", [
    lambda o: o.pop("mult"),
    lambda o: o.update(dim=3),
    lambda o: o.update(cyclotomic_order=5),
    lambda o: o.update(format="other/1"),
    lambda o: o.update(basis=["1"]),
    lambda o: o["phi"].append({"indices": [0, 0], "coeff": 1}),
    lambda o: o["phi"].append({"indices": [0, 0, 9], "coeff": 1}),
    lambda o: o.update(alpha=[1]),
    lambda o: o.update(antipode="S"),
    lambda o: o.update(unit=[True, 0]),
    lambda o: o.update(modules=[{"name": "m", "dim": 1, "action": [[[1]]]}]),
    lambda o: o.update(modules=[{"name": "m", "dim": 1, "action": [[[1]], [[1]]]}] * 2),
])
def test_format_errors(mutation):
    obj = to_dict(AlgebraFile(hq(2)))
    mutation(obj)
    with pytest.raises(FormatError):
        loads(json.dumps(obj))


def test_not_json():
    with pytest.raises(FormatError):
        loads("{not json")
    with pytest.raises(FormatError):
        loads("[1, 2]")


junk = st.one_of(st.none(), st.booleans(), st.integers(-3, 3), st.text(max_size=3),
                 st.lists(st.integers(0, 2), max_size=3), st.dictionaries(st.text(max_size=2), st.integers(), max_size=2))
BASE = to_dict(AlgebraFile(kc2()[0], kc2()[1].r))


@given(st.sampled_from(sorted(BASE)), junk)
def test_corrupted_fields_raise_format_error_only(key, value):
    obj = copy.deepcopy(BASE)
    obj[key] = value
    try:
        loads(json.dumps(obj))
    except FormatError:
        pass


def test_scalars_are_canonical():
    text = dumps(AlgebraFile(hq(3)))
    obj = json.loads(text)
    assert obj["unit"] == [1, 0, 0]
    assert any(isinstance(e["coeff"], dict) for e in obj["phi"])


def test_mutated_document_still_round_trips():
    H = hq(3)
    from conftest import mutate

    doc = AlgebraFile(mutate(H, phi=bump(H.phi, (0, 1, 2))))
    assert dumps(loads(dumps(doc))) == dumps(doc)
