"""Tensor fields, Levi-Civita connection, curvature, Lie and exterior calculus."""

from .calculus import (alternate, apply, compose, covariant_derivative, divergence,
                       evaluate_form, exterior_derivative, gradient, hessian, lie_bracket,
                       lie_derivative, lie_derivative_connection, nabla_vector, tensor_product,
                       wedge)
from .connection import (ConnectionCheckError, ConnectionData, Curvature, levi_civita, ricci,
                         ricci_operator, riemann, scalar_curvature)
from .model import ManifoldModel, ModelError, determinant, inverse
from .tensor import TensorField, expr_array

__all__ = [
    "ConnectionCheckError", "ConnectionData", "Curvature", "ManifoldModel", "ModelError",
    "TensorField", "alternate", "apply", "compose", "covariant_derivative", "determinant",
    "divergence", "evaluate_form", "expr_array", "exterior_derivative", "gradient", "hessian",
    "inverse", "levi_civita", "lie_bracket", "lie_derivative", "lie_derivative_connection",
    "nabla_vector", "ricci", "ricci_operator", "riemann", "scalar_curvature", "tensor_product",
    "wedge",
]
