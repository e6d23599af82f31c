"""
Jets and coefficient expressions
================================

Profile functions are evaluated on second-order jets, so every value comes
with its first two t-derivatives.  Expressions typed as text compile to the
same jets.
"""

import math

from pagelab import Jet2, eval_expr, finite_difference_oracle, parse_expression
from pagelab.expr import to_text

# %%
# A jet is (value, d/dt, d²/dt²).  Lifting t = 3 and squaring gives t² and
# its derivatives 2t and 2.
t = Jet2(3.0, 1.0, 0.0)
print("t^2 at 3:", tuple(t * t))

# %%
# Elementary functions follow the chain rule.
print("sqrt at 4:", tuple(Jet2(4.0, 1.0, 0.0).sqrt()))
print("sin at 0:", tuple(Jet2(0.0, 1.0, 0.0).sin()))

# %%
# The same numbers from text.  ``^`` is right-associative and binds tighter
# than ``*``; unknown tokens are reported by byte offset.
e = parse_expression("2*sqrt(t) + t^2^0.5")
print("parsed:", to_text(e))
print("value at t=4:", tuple(eval_expr(e, 4.0)))

try:
    parse_expression("2**t")
except ValueError as exc:
    print("error:", exc)

# %%
# Central differences agree with the jet derivatives up to truncation error.
f = parse_expression("cos(t)^2/(1 + t)")
j = eval_expr(f, 0.7)
d1, d2 = finite_difference_oracle(lambda s: eval_expr(f, s).val, 0.7)
print(f"jet d1={j.d1:.10f} fd d1={d1:.10f}")
print(f"jet d2={j.d2:.10f} fd d2={d2:.10f}")
