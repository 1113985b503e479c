"""Exact finite-field towers, composed products under diamond ops, and
irreducible-witness searches, backed by the C++ core."""

from ._ffdiamond import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    BivarPoly,
    BrawleyCarlitz,
    CancellationCounterexample,
    DegreeBoundSweep,
    DiamondOp,
    Error,
    FieldCtx,
    FieldElem,
    FourWay,
    Poly,
    RestrictedInjectivity,
    SearchResult,
    SweepReport,
    Tightness,
    WeakCancellation,
    Witness,
    all_monic_irreducibles,
    artin_schreier_witness,
    binomial_witness,
    brawley_carlitz_verify,
    composed_product,
    enumerate_tasks,
    eval_diamond,
    factor_degree_profile,
    field,
    find_witness,
    four_way_equivalence,
    irreducible_count,
    is_irreducible,
    linear_independence_check,
    ord_mod,
    poly_gcd,
    poly_quot,
    poly_rem,
    powmod,
    random_irreducible,
    restricted_injectivity,
    root_multiplicity,
    roots_in,
    squarefree_radical,
    tightness_witness,
    verify_range,
    weak_cancellation,
    weak_cancellation_degree_sweep,
    witness_defects,
)

__version__ = "0.1.0"
