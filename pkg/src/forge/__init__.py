"""Exact arithmetic for jacobian elliptic surfaces and even integral lattices.

Subpackages cover: exact field/polynomial arithmetic over quadratic
extensions of the rationals, Kodaira fiber classification of Weierstrass
models over the projective line, Mordell-Weil sections with height pairing
and Neron-Severi bookkeeping, quadratic base change and twisting with the
Enriques fixed-point-free criterion, and even integral lattices with
discriminant forms.
"""

from .field import FieldElement, ZERO, ONE, squarefree_normalize
from .poly import (Polynomial, Place, RationalFunction, INF,
                   series_of, series_mul, series_inv, series_sqrt, series_val)
from .parse import (ParseError, parse_rational, parse_polynomial, parse_model)
from .factor import (factor_squarefree, is_irreducible, roots_in_field,
                     square_classify, field_sqrt_rf)
from .surface import (Surface, SurfaceSummary, FiberClassification,
                      kodaira_from_valuations, apply_involution, EULER)
from .section import (Section, ComponentError, ComponentLabel, component_at,
                      intersect, intersect_places, intersect_zero, height,
                      height_report, height_pairing, trivial_lattice, NSModel,
                      tau_ns_model, tau_check)
from .bench import (ExampleCase, Report, REGISTRY, example_ids, run_example,
                    run_all, emit_report)
from .twist import (BaseChangeError, QuadraticBaseChange, pullback, twist,
                    TWIST_TABLE, TwistPackage, EnriquesReport,
                    enriques_check, m1_family, M1FamilyResult)
from .intlat import (IntLattice, LatticeEmbedding, DiscriminantGroup,
                     named_lattice, parse_lattice_expr, diagram_lattice,
                     disc_and_signature, discriminant_group,
                     orthogonal_complement, is_primitive, overlattice,
                     roots, short_vectors, smith_normal_form,
                     figure_star_lattice, brauer_witness, odd_M_obstruction)

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "1.0.0"
