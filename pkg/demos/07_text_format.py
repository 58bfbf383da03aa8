# # Reading and writing pair diagrams
#
# Diagrams, rings and witnesses have a small line-oriented text format; the
# CLI reads it.

from dglapair import catalog as cat
from dglapair.cli import main
from dglapair.textformat import parse, serialize

doc = cat.fixture_document("abelian-line")
text = serialize(doc)
print(text)
print("round trip:", parse(text) == doc)

# A bracket whose degrees do not add is rejected with its position:
try:
    parse("dgla L\nbasis: a:0, b:1\nbracket: [b,b] -> 1 b\n")
except ValueError as exc:
    print("error:", exc)

# The same checks from the command line (exit code 0 means every check passed):
print("exit code:", main(["mc-verify", str(cat.__file__).replace("catalog.py", "fixtures/abelian-line.dgl")]))
