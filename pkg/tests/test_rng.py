from seqwit.corpus import build_default_corpus, random_sequence
from seqwit.rng import DEFAULT_SEED, SEED_ENV, TraceRNG, resolve_seed


def test_seed_precedence(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    assert resolve_seed(None) == DEFAULT_SEED
    monkeypatch.setenv(SEED_ENV, "9")
    assert resolve_seed(None) == 9
    assert resolve_seed(3) == 3


def test_trace_rng_records_labelled_draws():
    rng = TraceRNG(7, trace_limit=2)
    rng.randint(1, 6, "die")
    rng.chance(0.5, "coin")
    rng.choice([1, 2, 3], "pick")
    assert rng.draws == 3
    assert len(rng.trace) == 2
    assert rng.trace[0]["op"] == "die"


def test_subset_keeps_population_order():
    picked = TraceRNG(1).subset(list(range(10)), 4)
    assert picked == sorted(picked)
    assert len(set(picked)) == 4


def test_same_seed_same_draws():
    a = [random_sequence(TraceRNG(12)) for _ in range(3)]
    b = [random_sequence(TraceRNG(12)) for _ in range(3)]
    assert a == b
    assert build_default_corpus(4, seed=8) == build_default_corpus(4, seed=8)
