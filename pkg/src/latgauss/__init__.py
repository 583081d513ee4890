"""latgauss: discrete Gaussian masses over lattices with rigorous tail control.

The package computes Gaussian masses of lattices and cosets by direct
summation with certified truncation error, evaluates the associated tail
and distinguishing bounds in log space, and verifies every inequality
numerically against brute-force oracles at small dimension.
"""

from .bounds import (
    BoundReport,
    TailParams,
    classic_bound_log,
    epsilon_log,
    improved_bound_log,
    improved_sandwich_log,
    improvement_ratio_log,
    report,
    sandwich_bounds_log,
    tau_radius,
    unified_form_log,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    EpsilonTooLarge,
    LatGaussError,
    NotFullRank,
    RankDeficient,
    RegimeViolation,
    TolUnreachable,
    VerificationFailure,
)
from .gauss import (
    ComplexMass,
    GaussianParam,
    MassResult,
    coset_mass,
    excluded_mass,
    poisson_check,
    rho_point,
    rho_point_log,
)
from .lattice import (
    DEFAULT_BUDGET,
    GramSchmidt,
    LatticeBasis,
    SuccessiveMinima,
    dist_to_lattice,
    dual_basis,
    enumerate_in_ball,
    gram_schmidt,
    integer_lattice,
    load_basis,
    successive_minima,
)
from .verify import (
    SuiteConfig,
    SuiteReport,
    VerifyRecord,
    check_improved,
    check_poisson,
    check_refined,
    check_sandwich,
    check_transference,
    random_lattice,
    run_suite,
)
from .cli import AdviceResult, SweepSpec, advise, sweep_rows

__version__ = "0.1.0"
