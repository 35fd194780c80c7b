"""Exact tools for searching orbifold equivalences between Landau-Ginzburg potentials."""

from .ring import (GradedRing, Polynomial, Potential, PotentialError, ParseError, berglund_huebsch_transpose,
                   central_charge, jacobian_ideal, make_potential, monomials_of_grading, parse_polynomial,
                   validate_potential)
from .groebner import GroebnerBasis, Limits, ResourceLimitExceeded, buchberger, normal_form
from .residue import ResidueProblem, residue_symbol
from .mf import (MatrixFactorization, SuperModule, TensorRingPair, flat_from_adjugate, quantum_dimension,
                 verify_factorization)
from .ansatz import AnsatzSpec, GenericMF, build_generic, enumerate_specs
from .equations import EquationSystem, append_nonvanishing, extract, linear_eliminate, stats
from .feasibility import Verdict, check, export, search
from .problem import load_problem

__version__ = "0.1.0"
