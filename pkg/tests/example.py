# pylint: disable=line-too-long

import os
import tempfile
import logging

from deltaalg import (
    AlgebraSpec,
    Mode,
    Parity,
    SuiteConfig,
    Verdict,
    classify,
    delta_derivations,
    load_algebra,
    run_suite,
    save_algebra,
    scan_exceptional,
)
from deltaalg.jordancons import build_Dt
from deltaalg.liecons import build_W


def example():
    """Usage example"""
    dirname = tempfile.mkdtemp()
    logging.info(dirname)

    # Building the Witt type Lie superalgebra W(2) and storing its structure constants.
    # Every scalar is an exact Gaussian rational, written as a string like "1/2".
    path = os.path.join(dirname, "w2.json")
    save_algebra(build_W(2), path, verify=True)
    witt = load_algebra(path)
    assert witt.dim == 8

    # Computing the even 1/2-superderivations. They are multiples of the identity.
    space = delta_derivations(witt, "1/2", Parity.EVEN, Mode.SUPER)
    assert space.dim == 1
    verdict = classify(witt, space)
    assert not verdict.nontrivial
    assert verdict.verdict == Verdict.IN_SUPERCENTROID

    # Away from 1/2 and 1 the space is zero.
    assert delta_derivations(witt, "1/4", Parity.EVEN, Mode.SUPER).dim == 0

    # Scanning every delta at once. Kernel dimensions only jump at 1/2 and 1.
    report = scan_exceptional(witt, Mode.SUPER, Parity.EVEN)
    assert report.generic_dim == 0
    assert sorted(str(delta) for delta in report.exceptional) == ["1", "1/2"]

    # Simple Jordan superalgebras have no nontrivial 1/2-superderivations either.
    dt = build_Dt(3)
    for parity in (Parity.EVEN, Parity.ODD):
        space = delta_derivations(dt, "1/2", parity, Mode.SUPER)
        assert not classify(dt, space).nontrivial

    # Running part of the check battery on a custom selection.
    config = SuiteConfig(probe_deltas=(), algebras=(AlgebraSpec.of("K3"),))
    assert run_suite(config).passed


if __name__ == "__main__":
    example()
