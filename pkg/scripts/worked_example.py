"""Walk the ternary-quartic example through every stage of the recovery chain.

    python3 scripts/worked_example.py
"""
from hessrec import fixtures as fx
from hessrec.acceptance import example_chain, forced_chart_pullback
from hessrec.exactla import QQ
from hessrec.mpoly import GradedSubspace, format_poly, parse_poly, proportional
from hessrec.symsq import rho_inverse


def show(title, items):
    print(f"== {title}")
    for it in items:
        print("  ", it)


def main():
    I2, F, trace = example_chain()
    show("I_2 (7 quadrics)", [format_poly(q) for q in I2.forms()])
    J2 = trace["J2"]
    show("J_2 (Veronese part)", [format_poly(q) for q in J2.forms()])
    print("   equals the reference J_2:", J2 == GradedSubspace.span(fx.veronese_j(), 6, 2, QQ, "z"))
    res = trace["resolution"]
    show("resolution", [f"ranks {res.ranks}", f"twists {res.twists}"])
    phi = trace["phi"]
    show(f"chart (variable {phi.s}, pivot {phi.pivot})", [format_poly(c) for c in phi.forms])
    show("parametrization", [format_poly(f) for f in trace["param"]])
    show("extra quadric", [format_poly(trace["q_extra"])])
    show("pullback quartic G", [format_poly(trace["G"])])
    show("group element g", [[str(c) for c in row] for row in trace["g"]])
    show("recovered F", [format_poly(F)])
    print("   matches the input quartic:", proportional(F, parse_poly(fx.QUARTIC, 3)))

    G, A = forced_chart_pullback(I2, J2)
    g, _ = rho_inverse(A)
    show("with the reference chart forced", [f"G = {format_poly(G)}",
                                            f"g = {[[str(c) for c in row] for row in g]}"])


if __name__ == "__main__":
    main()
