"""tauscope: torsion classes, wide subcategories and universal localisations
of finite-dimensional quiver algebras, in exact arithmetic."""

__version__ = "0.1.0"
