"""Exception types shared across the package."""


class QMacdoError(Exception):
    pass


class PoleError(QMacdoError, ZeroDivisionError):
    """A denominator vanished identically (or at the chosen evaluation point)."""


class DegenerateBase(QMacdoError, ZeroDivisionError):
    """(base; base)_k vanished, i.e. the base is a root of unity."""


class SpecialParams(QMacdoError, ZeroDivisionError):
    """A Gram-Schmidt pivot vanished; q, t are special."""


class RankError(QMacdoError, ValueError):
    pass


class NotInHook(QMacdoError, ValueError):
    pass


class NotContained(QMacdoError, ValueError):
    pass


class ConventionError(QMacdoError, ValueError):
    """Operator shifts are not of the lower-triangular form T_q^mu T_t^{-nu}, mu, nu >= 0."""


class TruncationTooSmall(QMacdoError, ValueError):
    pass


class BasisError(QMacdoError, ValueError):
    """Re-expression in a power-sum type basis failed (too few variables)."""


class ConfigError(QMacdoError, ValueError):
    pass
