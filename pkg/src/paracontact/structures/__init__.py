"""Almost paracontact metric structures, their derived operators and class detection."""

from .builtins import (BUILTINS, QUOTED_CONNECTIONS, UnknownBuiltinError, builtin, example_5_1,
                       example_5_2, flat_para_cosymplectic, quoted_connection)
from .classify import FLAGS, INDETERMINATE, KMuFit, StructureClassReport, classify, fit_k_mu
from .structure import (ConsistencyError, ParacontactStructure, StructureError,
                        contact_form_differential, eta_wedge_deta, fundamental_two_form,
                        h_operator, is_paracontact_metric, nabla_xi_residual, nijenhuis,
                        nijenhuis_torsion, verify_axioms)

__all__ = [
    "BUILTINS", "ConsistencyError", "FLAGS", "INDETERMINATE", "KMuFit", "ParacontactStructure",
    "QUOTED_CONNECTIONS", "StructureClassReport", "StructureError", "UnknownBuiltinError",
    "builtin", "classify", "contact_form_differential", "eta_wedge_deta", "example_5_1",
    "example_5_2", "fit_k_mu", "flat_para_cosymplectic", "fundamental_two_form", "h_operator",
    "is_paracontact_metric", "nabla_xi_residual", "nijenhuis", "nijenhuis_torsion",
    "quoted_connection", "verify_axioms",
]
