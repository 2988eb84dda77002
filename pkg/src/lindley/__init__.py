"""Point-null hypothesis testing: frequentist, Bayesian and practical-range decisions."""

from .bayes import BayesConfig, BhtResult, bayes_factor, marginal_slab, posterior_h0
from .freq import BinomialSummary, NhtResult, SampleSummary, binomial_test, t_test_one_sided, z_test
from .mc import McConfig, McReport, run_mc
from .numerics import DegenerateError, DomainError, QuadratureError
from .paradox import ParadoxReport, SweepRow, divergence_check, mean_shrink_identity, sweep_fixed_t
from .practical import AdjustedDecision, InflationInput, PracticalRange, adjusted_decision, inflate_p, make_range

__version__ = "0.1.0"
