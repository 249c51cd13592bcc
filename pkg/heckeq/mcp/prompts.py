from heckeq.mcp.server import mcp


@mcp.prompt()
def check_identity(lhs: str, rhs: str, order: str = "30") -> str:
    """
    Create a prompt for checking a proposed q-series identity.

    Args:
        lhs: Left side in the heckeq expression language
        rhs: Right side in the heckeq expression language
        order: Order to compare to
    """
    return f"""A q-series identity has been proposed:

    {lhs}
    =
    {rhs}

Check it to order {order} with the heckeq tools:

1. Read heckeq://grammar if either side does not parse.
2. Call evaluate_series on "({lhs}) - ({rhs})" with order "{order}".
3. If every coefficient is zero, report the identity as verified to that order.
4. Otherwise report the first exponent with a nonzero coefficient and the
   coefficients of both sides there (evaluate each side separately).

Do not claim the identity is proven: agreement to a finite order is evidence only.
"""
