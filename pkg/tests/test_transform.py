"""Whole-part transformation: synthesis counts, invariants."""

import numpy as np

from oseplan.fixtures import six_type_part
from oseplan.part_model import Part, SampledFace, validate_part
from oseplan.transform import GeometryType, transform_part


def test_housing_has_24_attribute_records(housing, housing_transform):
    assert len(housing.faces) == 24
    assert validate_part(housing) == []
    assert len(housing_transform.attributes) == 24
    assert sum(housing_transform.counts.values()) == 24


def test_housing_counts(housing_transform):
    counts = {t.value: n for t, n in housing_transform.counts.items() if n}
    assert counts == {
        "Plan": 16,
        "Cylinder": 2,
        "ConeShaped": 1,
        "Ruled": 4,
        "Unspecified": 1,
    }


def test_six_planar_block_faces():
    size = 10.0
    u = np.linspace(0, size, 4)
    U, V = np.meshgrid(u, u, indexing="ij")
    full = np.full_like(U, size)
    zeros = np.zeros_like(U)
    faces = [
        SampledFace("top", np.stack([U, V, full], axis=-1)),       # +z
        SampledFace("bottom", np.stack([V, U, zeros], axis=-1)),   # -z
        SampledFace("east", np.stack([full, U, V], axis=-1)),      # +x
        SampledFace("west", np.stack([zeros, V, U], axis=-1)),     # -x
        SampledFace("south", np.stack([U, zeros, V], axis=-1)),    # -y
        SampledFace("north", np.stack([V, full, U], axis=-1)),     # +y
    ]
    result = transform_part(Part("block", faces))
    assert result.counts[GeometryType.PLAN] == 6
    assert sum(result.counts.values()) == 6


def test_one_of_each_type_counts():
    result = transform_part(six_type_part())
    nonzero = {t: n for t, n in result.counts.items() if n}
    assert all(n == 1 for n in nonzero.values())
    assert len(nonzero) == 6


def test_counts_sum_to_face_count(housing_transform):
    assert sum(housing_transform.counts.values()) == 24


def test_inaccessible_listed_not_failed(housing_transform):
    assert housing_transform.inaccessible == ["bore-bottom"]
    attrs = housing_transform.by_face()["bore-bottom"]
    assert attrs.inaccessible
    assert attrs.potential_mfg_types == []


def test_transform_deterministic(housing):
    a = transform_part(housing)
    b = transform_part(housing)
    for x, y in zip(a.attributes, b.attributes):
        assert x == y
