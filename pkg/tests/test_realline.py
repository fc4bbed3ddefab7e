from fractions import Fraction

import numpy as np
import pytest

from seqwit.errors import DescriptorError
from seqwit.realline import (
    RealSeqGen,
    convergence_sample,
    deviations,
    sample_witness_check,
    strictly_decreasing,
)


def test_peaks_are_a_witness():
    v = sample_witness_check(RealSeqGen.peaks(), 10_000, Fraction(1, 2), 1e-9)
    assert v.is_witness
    assert len(v.indices) == 10_000
    assert float(deviations(RealSeqGen.peaks(), 10_000, target=1.0).max()) <= 1e-9


def test_zeros_show_no_witness():
    v = sample_witness_check(RealSeqGen.zeros(), 10_000, Fraction(1, 2), 1e-9)
    assert not v.is_witness
    assert v.max_deviation <= 1e-7
    assert "not a proof" in v.to_dict()["caveat"]


def test_zero_function_has_no_witness():
    v = sample_witness_check(RealSeqGen.peaks(), 500, Fraction(1, 2), 1e-9, function="zero")
    assert v.kind == "none_up_to"
    assert v.max_deviation == 0.0


def test_convergence_sample():
    out = convergence_sample(RealSeqGen.peaks(), 1000, [Fraction(1, 100), Fraction(10)])
    assert out["1/100"] == 16
    assert out["10"] == 1
    assert convergence_sample(RealSeqGen.peaks(), 1000, []) == {}


def test_generators_decrease_to_zero():
    assert strictly_decreasing(RealSeqGen.peaks(), 1000)
    assert strictly_decreasing(RealSeqGen.zeros(), 1000)
    terms = RealSeqGen.zeros().terms(4)
    assert np.allclose(terms, [1 / np.pi, 1 / (2 * np.pi), 1 / (3 * np.pi), 1 / (4 * np.pi)])


def test_invalid_parameters():
    with pytest.raises(DescriptorError):
        RealSeqGen(Fraction(0))
    with pytest.raises(DescriptorError):
        sample_witness_check(RealSeqGen.peaks(), 0, Fraction(1, 2), 1e-9)
