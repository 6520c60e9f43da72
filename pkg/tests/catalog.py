"""Named presentations and polynomials shared by the tests."""

# relator walks a 1 x 2 rectangle twice; Delta = t2 + 1
DOUBLED_RECTANGLE = "<x1,x2 | x1*x2^2*x1^-1*x2^-2>"
# Delta = t1 + t2 + 1
TRIANGLE = "<x1,x2 | x2^2*x1*x2^-1*x1*x2^-1*x1^-2>"
# Brown's length-16 relator; Delta = t1 - 1
BROWN = "<x1,x2 | x1^-1*x2^-1*x1*x2^2*x1^-1*x2^-1*x1^2*x2^-1*x1^-1*x2*x1^-1*x2*x1*x2^-1>"
# commutator relator with Delta = (t1 - 1)(t1 t2 - 1) and two short arcs of Sigma^1
TWO_ARCS = ("<x1,x2 | x1^2*x2^-1*x1^-1*x2^-1*x1^-2*x2*x1^3*x2*x1^-1*x2^-1*x1*x2*x1^-1*x2^-1"
            "*x1^-2*x2^-1*x1*x2*x1^-1*x2^-1*x1*x2^2>")
BAUMSLAG_SOLITAR = "<x1,x2 | x1*x2*x1^-1*x2^-2>"
Z_FREE_Z2 = "<x1,x2 | x2^2>"
FREE2 = "<x1,x2 | >"
INTEGERS = "<x1 | >"
# three-component Hopf link group, Z x F_2
HOPF3 = "<x1,x2,x3 | x1*x2*x3*x1*x3^-1*x2^-1*x1^-1*x1^-1, x1*x2*x3*x2*x3^-1*x2^-1*x1^-1*x2^-1>"

# symmetric polynomial of a closed 3-manifold with H1 = Z^2
DIAGONALS_DELTA = "t1^2*t2 + t1*t2^2 + t1 + t2 - 4*t1*t2"
