import json

from heckeq.mcp.server import mcp
from heckeq.services.parser import SIGNATURES
from heckeq.services.suites import list_suites


# Grammar of the expression language
@mcp.resource("heckeq://grammar")
def get_grammar() -> str:
    """
    Provides the grammar of the series expression language.
    """
    calls = "\n".join(
        f"    {name}({', '.join(kinds)})" for name, kinds in sorted(SIGNATURES.items())
    )
    return f"""
    heckeq expression language

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" sint)*
    atom   := rat | qpow | call | "(" expr ")" | "-" atom
    qpow   := ["-"] "q" ["^" "(" rat ")" | "^" sint]
    rat    := sint ["/" uint]      (no spaces inside a literal p/q)

    Calls (";" may replace ","):
{calls}

    Argument kinds: int = integer, rat = rational, qarg = +-q^e or +-1,
    set = {{a, b, ...}}.
    """


# Suite catalogue
@mcp.resource("heckeq://suites")
def get_suites() -> str:
    """
    Provides the identity suite catalogue as JSON.
    """
    return json.dumps(list_suites(), indent=2)
