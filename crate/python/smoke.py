"""Smoke test for the convkit Python extension."""

import json

import convkit


def main():
    ws = convkit.Workspace.builtin("counterexample")
    assert "phi" in ws.names()["maps"]

    h = ws.convolution("zero", "C", "A")
    f = ws.element(h, "f")
    assert f == {"id⊗z←id⊗y": "1"}
    assert h.is_mc(f)
    assert h.bracket([f, f]) == {}
    assert h.jacobi(3)

    composites = ws.compose()
    at_fff = {
        order: [v for n, inputs, v in rows if n == 3 and inputs == ["id⊗z←id⊗y"] * 3]
        for order, rows in composites.items()
    }
    assert at_fff["ℓ∘r"] == [], at_fff
    assert at_fff["r∘ℓ"] == [{"w←x": "1"}], at_fff

    k = convkit.Workspace.builtin("kappa")
    g = k.convolution("kappa", "BA", "A")
    pi = k.element(g, "pi")
    assert g.mc_residual(pi) == {}
    assert g.jacobi(4)

    again = convkit.Workspace.parse(k.to_json())
    assert again.to_json() == k.to_json()

    report = json.loads(convkit.run(["counterexample"]))
    assert report["pass"], report
    print(report["lines"][0])
    print("smoke ok")


if __name__ == "__main__":
    main()
