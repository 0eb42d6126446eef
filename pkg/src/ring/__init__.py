from .field import FieldSpec, GF, is_prime, QQ, Scalar
from .poly import grlex_key, Monomial, parse_poly, Poly, poly_add, poly_mul, poly_neg, poly_scale, poly_sum, PolyRing
from .series import series_inverse, TruncatedSeries
