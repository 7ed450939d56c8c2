"""Zero-divisor graphs of matrix semirings over finite entire antirings and their metric dimension."""
from .errors import (AxiomError, BudgetExceeded, DisconnectedGraphError, MatrixError,
                     SemiringFormatError, ZdimError)
from .matrix import (SMatrix, SupportClass, count_class_boolean, count_no_zero_lines,
                     count_zero_divisors, enumerate_class, is_zero_divisor, mat_mul,
                     parse_matrix, pattern, support_class)
from .metric import (DimReport, build_general_resolving_set, build_WR, dim_formula_boolean,
                     dim_formula_general, exact_metric_dimension, forced_twin_elements,
                     is_resolving, predicted_WR_size)
from .semiring import (AxiomReport, FiniteSemiring, builtin_boolean, builtin_chain,
                       check_axioms, load_semiring)
from .zdgraph import (ZeroDivisorGraph, build_graph, diameter, distances_from,
                      twin_classes)

__version__ = "0.1.0"
