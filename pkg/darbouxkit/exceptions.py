"""Errors raised by the darbouxkit kernel."""


class KernelError(Exception):
    """Base class for every error the kernel raises on bad input"""


class UnboundJet(KernelError):
    """A polynomial was evaluated at a point that misses one of its jets"""

    def __init__(self, jet):
        self.jet = jet
        super().__init__(f"jet variable {jet} is not bound at the evaluation point")


class ZeroOperator(KernelError):
    """The zero operator has no principal symbol"""


class BadIndex(KernelError):
    """Bell polynomial indices outside 0 <= k <= n, or too few arguments"""


class MixedAlphaJet(KernelError):
    """The moving frame has no normalization for mixed jets of the gauge exponent"""

    def __init__(self, jet):
        self.jet = jet
        super().__init__(f"cannot restrict mixed jet {jet} to the frame")


class MixedDerivative(KernelError):
    """An operator given as normalized M contains a mixed derivative"""


class NotLaplaceOperator(KernelError):
    """An operator is not of the form Dx*Dy + a*Dx + b*Dy + c"""


class PrincipalSymbolMismatch(KernelError):
    """L or L1 of a Darboux quadruple does not have principal symbol DxDy"""


class OperatorSyntaxError(KernelError):
    """Text does not conform to the operator grammar"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NegativePower(OperatorSyntaxError):
    """A factor was raised to a negative power"""


class OrderMismatch(KernelError):
    """An explicit order is lower than the order of the operator it describes"""


class UnnormalizedAlphaJet(KernelError):
    """The underived gauge exponent has no value on the moving frame"""

    def __init__(self, jet):
        self.jet = jet
        super().__init__(f"the frame fixes derivatives of the gauge exponent only, not {jet}")


class GaugeSymbolClash(KernelError):
    """A symbolic gauge exponent shares its name with a coefficient function"""

    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(
            f"gauge exponent {symbol!r} is also a coefficient symbol; choose another name"
        )
