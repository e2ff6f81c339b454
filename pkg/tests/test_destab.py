import pytest

from logcy.destab import destab_pipeline_run, nontoric_destab_pipeline
from logcy.classify import classify_nontoric_blowdown
from logcy.errors import ScriptPreconditionFailed
from logcy.fibration import CurveClass, equal_up_to_sign, longitude, total_monodromy
from logcy.model import hirzebruch, make_model, p2

from reps import ROWS, fp


def _state(run, tag):
    return dict(run.states)[tag]


def test_two_b_i_final_list():
    model = make_model(fp(3), (1, 0, 1, 0))
    r = classify_nontoric_blowdown(model)
    assert r.case == "2.b.i" and r.sequence == (1, 3, 2)
    run = destab_pipeline_run(model, r)
    pre = _state(run, "E2")
    expected = [CurveClass(0, (-1, 2)), longitude((0, -3)), longitude((0, 0)), longitude((0, 3))]
    assert pre.k == 2 and len(pre) == 4
    assert all(equal_up_to_sign(a, b) for a, b in zip(pre.cycles, expected))
    final = (longitude((-3,)), longitude((0,)), longitude((3,)))
    assert all(equal_up_to_sign(a, b) for a, b in zip(run.fibration.cycles, final))


def test_p2_first_display():
    model = p2((2, 0, 0))
    run = destab_pipeline_run(model, classify_nontoric_blowdown(model))
    disp = _state(run, "E1 display")
    assert disp.k == 3
    assert disp.cycles == (longitude((0, 0, 0)), longitude((-1, 1, 1)), longitude((0, 1, 1)),
                           longitude((0, 1, 1)), longitude((0, 2, 2)))
    # S_E sits in front right before destabilising; its slot-0 entry goes
    pre = _state(run, "E1")
    assert equal_up_to_sign(pre.cycles[0], CurveClass(0, (-1, 1, 1)))
    assert run.fibration.cycles == (longitude((0, 0)), longitude((1, 1)), longitude((1, 1)),
                                    longitude((2, 2)))


def test_meridians_moved_unchanged():
    model = p2((2, 0, 0))
    run = destab_pipeline_run(model, classify_nontoric_blowdown(model))
    f = _state(run, "meridians moved")
    assert f.cycles[-2:] == (CurveClass(0, (1, 0, 0)),) * 2


@pytest.mark.parametrize("row", range(len(ROWS)))
def test_rank_drops_by_sequence(row):
    model = ROWS[row][0]
    r = classify_nontoric_blowdown(model)
    run = destab_pipeline_run(r.normal_model, r)
    assert run.fibration.k == model.k - len(r.sequence)
    assert len(run.fibration) == model.total_m + model.k - len(r.sequence)
    # each destabilisation records the entries it removed
    assert len(run.deleted) == len(r.sequence)


def test_deleted_nonzero_flag():
    r = classify_nontoric_blowdown(ROWS[3][0])
    assert destab_pipeline_run(r.normal_model, r).deleted_nonzero
    r = classify_nontoric_blowdown(ROWS[0][0])
    assert not destab_pipeline_run(r.normal_model, r).deleted_nonzero


def test_rejects_foreign_report():
    r = classify_nontoric_blowdown(p2((2, 0, 0)))
    with pytest.raises(ScriptPreconditionFailed):
        nontoric_destab_pipeline(hirzebruch(2, (1, 0, 1, 0)), r)


def test_pipeline_output_unimodular():
    import numpy as np
    model = hirzebruch(2, (1, 0, 1, 0))
    f = nontoric_destab_pipeline(model, classify_nontoric_blowdown(model))
    assert round(np.linalg.det(total_monodromy(f))) == 1
