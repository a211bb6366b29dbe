"""Critical orbits of quadratic maps over odd prime fields.

Compute rho-shapes of critical sequences, decide stability through the
adjusted-orbit square scan (with a symbolic irreducibility oracle as the
independent cross-check), run the character-sum experiments tying t_f to
#T_p(K), and census entire coefficient spaces.
"""

from ._version import __version__
from .census import (
    CensusReport,
    ScalingRow,
    ScalingTable,
    Xorshift64Star,
    parse_scaling_csv,
    primes_in_range,
    run_census,
    sample_indices,
    scaling_table,
)
from .charsum import (
    ORBIT_INDEX_OFFSET,
    SubsetSpec,
    TfBoundReport,
    TripleSumReport,
    TsetReport,
    WeilSumReport,
    k_star,
    triple_charsum,
    triple_domain_size,
    tset_size,
    verify_tf_bound,
    weil_sum,
    wset_size,
)
from .dynamics import OrbitShape, QuadPoly, critical_point, iterate_value, orbit_shape
from .errors import (
    BudgetExceeded,
    CompositeModulus,
    ConstantPolynomial,
    DivisionByZero,
    DomainTooLarge,
    EvenModulus,
    InvalidQuadratic,
    IterateCapExceeded,
    NotStableInput,
    OutOfRange,
    QOrbitError,
    WindowTooLarge,
)
from .ff import FieldCtx, Fp, chi_table, is_prime, new_field
from .polyarith import (
    DEFAULT_ITERATE_CAP,
    Poly,
    compose_iterate,
    is_irreducible,
    poly_divmod,
    poly_gcd,
    poly_mul,
    poly_powmod,
)
from .stability import OracleReport, StabilityVerdict, Verdict, stability_oracle, stability_test

__all__ = [
    "__version__",
    "BudgetExceeded",
    "CensusReport",
    "CompositeModulus",
    "ConstantPolynomial",
    "DEFAULT_ITERATE_CAP",
    "DivisionByZero",
    "DomainTooLarge",
    "EvenModulus",
    "FieldCtx",
    "Fp",
    "InvalidQuadratic",
    "IterateCapExceeded",
    "NotStableInput",
    "ORBIT_INDEX_OFFSET",
    "OracleReport",
    "OrbitShape",
    "OutOfRange",
    "Poly",
    "QOrbitError",
    "QuadPoly",
    "ScalingRow",
    "ScalingTable",
    "StabilityVerdict",
    "SubsetSpec",
    "TfBoundReport",
    "TripleSumReport",
    "TsetReport",
    "Verdict",
    "WeilSumReport",
    "WindowTooLarge",
    "Xorshift64Star",
    "chi_table",
    "compose_iterate",
    "critical_point",
    "is_irreducible",
    "is_prime",
    "iterate_value",
    "k_star",
    "new_field",
    "orbit_shape",
    "parse_scaling_csv",
    "poly_divmod",
    "poly_gcd",
    "poly_mul",
    "poly_powmod",
    "primes_in_range",
    "run_census",
    "sample_indices",
    "scaling_table",
    "stability_oracle",
    "stability_test",
    "triple_charsum",
    "triple_domain_size",
    "tset_size",
    "verify_tf_bound",
    "weil_sum",
    "wset_size",
]
