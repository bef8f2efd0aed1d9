"""Condition resolution, synthesis statistics, documentation round-trip."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oseplan.automation_report import (
    InfeasibleConditionsError,
    generate_documentation,
    optimize_conditions,
    parse_plan_document,
    report_statistics,
)
from oseplan.fixtures import overhang_part, seed_database, seed_tools
from oseplan.ose_db import CuttingSet, Interval, Mode, Priority, TMC
from oseplan.pipeline import run_pipeline
from oseplan.transform import GeometryType, MfgType


def tool_with_feed(lo, hi):
    return CuttingSet(
        id="T", diameter=10, cutting_length=20, tool_length=60, end_radius=1,
        cutting_material="Carbide", mfg_types=(MfgType.END,),
        modes=(Mode.ROUGHING,), tmcs=("TMC-X",),
        conditions={"feed_rate": Interval(lo, hi)},
    )


def tmc_with_feed(lo, hi):
    return TMC(id="TMC-X", cut_material="Al", cutting_material="Carbide",
               constraints={"feed_rate": Interval(lo, hi)})


def test_qmax_takes_interval_maximum():
    resolved = optimize_conditions(Priority.QMAX, tool_with_feed(100, 500),
                                   tmc_with_feed(200, 400))
    assert resolved.values["feed_rate"] == 400.0
    assert resolved.intervals["feed_rate"] == (200.0, 400.0)


def test_default_takes_midpoint():
    resolved = optimize_conditions(Priority.DEFAULT, tool_with_feed(100, 500),
                                   tmc_with_feed(200, 400))
    assert resolved.values["feed_rate"] == 300.0


def test_empty_intersection_raises_naming_parameter():
    with pytest.raises(InfeasibleConditionsError) as err:
        optimize_conditions(Priority.QMAX, tool_with_feed(100, 150),
                            tmc_with_feed(200, 400))
    assert err.value.parameter == "feed_rate"


def test_qmax_dominates_default_per_parameter():
    tool = seed_tools()[0]
    tmc = seed_database().tmcs["TMC-ALU-CARB"]
    qmax = optimize_conditions(Priority.QMAX, tool, tmc)
    default = optimize_conditions(Priority.DEFAULT, tool, tmc)
    for param, value in qmax.values.items():
        assert value >= default.values[param]
        lo, hi = qmax.intervals[param]
        assert lo <= value <= hi
        assert lo <= default.values[param] <= hi


# ---------------------------------------------------------------------------
# synthesis statistics


TYPES = list(GeometryType)


def table_from(counts_list):
    counts = dict(zip(TYPES, counts_list))
    return report_statistics(counts)


def test_reference_distribution_a():
    table = table_from([50, 109, 15, 13, 9, 144])
    assert [r.percentage for r in table.rows] == [
        14.71, 32.06, 4.41, 3.82, 2.65, 42.35
    ]
    assert table.total == 340


def test_reference_distribution_b_half_up():
    table = table_from([66, 73, 0, 25, 21, 39])
    # 21/224 = 9.375 %, the exact half case rounds up.
    assert [r.percentage for r in table.rows] == [
        29.46, 32.59, 0.00, 11.16, 9.38, 17.41
    ]


def test_single_nonzero_category_is_100():
    table = table_from([7, 0, 0, 0, 0, 0])
    assert table.rows[0].percentage == 100.0
    assert table.total_percentage == 100.0


def test_empty_population_rejected():
    with pytest.raises(ValueError, match="empty population"):
        report_statistics({t: 0 for t in TYPES})


@settings(max_examples=60, deadline=None)
@given(counts=st.lists(st.integers(0, 500), min_size=6, max_size=6)
       .filter(lambda c: sum(c) > 0))
def test_percentages_sum_to_100_within_005(counts):
    table = table_from(counts)
    assert sum(r.count for r in table.rows) == table.total
    assert abs(table.total_percentage - 100.0) <= 0.05


# ---------------------------------------------------------------------------
# documentation


def test_document_covers_every_face_exactly_once(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    doc = result.document
    mentioned = []
    for setup in doc["setups"]:
        mentioned.extend(setup["faces"])
    mentioned.extend(doc["exceptions"]["unmatched"])
    mentioned.extend(doc["exceptions"]["inaccessible"])
    assert sorted(mentioned) == sorted(f.id for f in housing.faces)


def test_json_and_text_mention_identical_ids(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    doc, text = result.document, result.text
    for setup in doc["setups"]:
        assert setup["id"] in text
        for face in setup["faces"]:
            assert face in text
    for seq in doc["sequences"]:
        assert seq["id"] in text
        assert seq["cutting_set"] in text
    for face in doc["exceptions"]["inaccessible"]:
        assert face in text


def test_empty_plan_document_has_only_exceptions(db, tools):
    part = overhang_part()
    # With an empty knowledge base nothing matches.
    empty_db = seed_database()
    empty_db.oses = {}
    result = run_pipeline(part, empty_db, tools)
    assert result.plan.setups == []
    faces = set(result.plan.unmatched) | set(result.plan.inaccessible)
    assert faces == {f.id for f in part.faces}


def test_document_round_trip(housing, db, tools):
    result = run_pipeline(housing, db, tools)
    rebuilt = parse_plan_document(result.document)
    assert rebuilt == result.plan
    doc2, _ = generate_documentation(rebuilt, db, tools)
    assert doc2 == result.document
