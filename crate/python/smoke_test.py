#!/usr/bin/env python3
"""Smoke test for the qform_py extension module.

Build the module and place it next to this script first:

    cargo build -p qform-py --release
    cp target/release/libqform_py.so python/qform_py.so

then run `python3 python/smoke_test.py`.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

try:
    import qform_py
except ImportError as err:
    sys.exit(
        f"could not import qform_py ({err}); build it with\n"
        "  cargo build -p qform-py --release\n"
        "  cp target/release/libqform_py.so python/qform_py.so"
    )


def main() -> None:
    # Corpus shape: 107 primitively universal + 45 almost universal forms.
    records = qform_py.corpus()
    assert len(records) == 152, len(records)
    universal = [r for r in records if r["primitively_universal"]]
    assert len(universal) == 107, len(universal)
    assert len(records) - len(universal) == 45

    # The diagonal discriminant-80 form misses exactly 24.
    q80 = qform_py.QForm.from_id("Q80^1")
    assert q80.exceptions(200) == [24]
    assert q80.rank == 4
    assert q80.det() == 80

    # Its halving transform is isometric to the discriminant-20 corpus form,
    # whose exception set is the halved {12}.
    q20 = qform_py.QForm.from_id("Q20^2")
    witness = q80.lambda2().is_isometric(q20)
    assert witness is not None, "lambda2(Q80^1) should be isometric to Q20^2"
    assert q20.exceptions(200) == [12]
    assert q80.lambda2_index() == 2
    assert q80.reduction_hypothesis()

    # 24 is not a local obstruction for Q80^1: the failure is global.
    assert q80.localrep(24, 2, primitive=True)
    assert q80.localrep(24, 5, primitive=True)
    assert q80.genus_represents(24)
    assert q80.first_primitive(24) is None
    assert q80.value([0, 2, 2, 0]) == 24  # imprimitive witness exists

    # Sum of four squares: the canonical least primitive witness of 4.
    squares = qform_py.QForm.from_sextuple([1, 1, 1, 0, 0, 0])
    assert squares.first_primitive(4) == [1, 1, 1, 1]
    assert len(squares.enumerate(4, primitive_only=True)) == 16

    # Core/complement splitting of a worked corpus form.
    split = qform_py.core_split("Q27^3")
    assert split["core"] == "N7"
    assert split["complement_norm"] == 270

    # The halving-transform suite at a reduced bound.
    pairs = qform_py.watson_pairs()
    assert len(pairs) == 18 and ("Q80^1", "Q20^2") in pairs
    reports = qform_py.run_suite("watson", bound=300)
    assert len(reports) == 18
    failed = [r["check_id"] for r in reports if not r["passed"]]
    assert not failed, failed

    print("smoke test passed: corpus, exceptions, lambda2/isometry, localrep,")
    print("enumeration, core splitting, and the watson suite all behave.")


if __name__ == "__main__":
    main()
