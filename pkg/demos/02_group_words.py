"""Evaluate textual group words: letters, inverses, powers, parentheses."""

from biqknot import build_default_group, eval_text, format_normal, parse_word

group = build_default_group()

words = [
    "a",
    "b^-2",
    "a^3 b^2",
    "a b a^-1 b^-1",
    "(ab)^-3 a (ab)^3",
    "(ab^3)^3 (ab) (ab^3)^-3",
    "(ab^3)^3 (ab^2) (ab^3)^-3",
]

for w in words:
    value = eval_text(w, group)
    print(f"{w:32s} = {format_normal(value)}")

# the parse tree is plain data
print("\nparse tree of '(ab)^-3 a (ab)^3':")
print(parse_word("(ab)^-3 a (ab)^3"))

# normal forms round-trip through the parser
g = eval_text("b a b a", group)
assert eval_text(format_normal(g), group) == g
print(f"\nround trip: b a b a = {format_normal(g)}")
