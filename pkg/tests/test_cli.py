import io
import json
import math

import pytest

from gaugelab.cli import EXIT_CONVERGENCE, EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, run

KAPPA1 = '{"kind":"kappa","kappa":1}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_quantize_dirac():
    code, out, _ = call("quantize", "dirac", "--q", "1", "--g", "0.5")
    assert code == EXIT_OK
    res = json.loads(out)
    assert res["product"] == 1 and res["nearest_integer"] == 1 and res["satisfied"] is True


def test_quantize_kappa_with_factorization():
    code, out, _ = call("quantize", "kappa", "--q", "0.5", "--kappa", "2", "--N", "2")
    res = json.loads(out)
    assert code == EXIT_OK and res["satisfied"]
    assert res["factorized"]["n_q"]["nearest_integer"] == 1
    assert res["factorized"]["n_kappa"]["nearest_integer"] == 1


def test_line_integral_unit_circle():
    code, out, _ = call("line-integral", "--potential", KAPPA1, "--path", "unit-circle")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx(2 * math.pi, abs=1e-9)


def test_spectrum():
    code, out, _ = call("spectrum", "--N", "3", "--range", "3")
    res = json.loads(out)
    assert res["fractions"] == ["-1", "-2/3", "-1/3", "0", "1/3", "2/3", "1"]
    assert res["charges"] == pytest.approx([-1, -2 / 3, -1 / 3, 0, 1 / 3, 2 / 3, 1], abs=1e-11)


def test_eval_and_curl():
    code, out, _ = call("eval", "--potential", '{"kind":"kappa","kappa":3}', "--point", "2,0,0")
    assert code == EXIT_OK and json.loads(out)["value"] == pytest.approx([0, 1.5, 0])
    code, out, _ = call("curl", "--potential", '{"kind":"dirac_i","g":1}', "--point", "2,0,0")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx([0.25, 0, 0], abs=1e-6)


def test_flux_and_stokes():
    code, out, _ = call("flux", "--field", '{"kind":"monopole","g":1}', "--surface", "unit-sphere")
    assert code == EXIT_OK and json.loads(out)["value"] == pytest.approx(4 * math.pi, abs=1e-6)
    code, out, _ = call("stokes", "--potential", KAPPA1, "--surface", '{"kind":"disk","radius":1}')
    res = json.loads(out)
    assert code == EXIT_OK
    assert res["boundary_integral"] == pytest.approx(2 * math.pi, abs=1e-9)


def test_ab_invariance_command():
    code, out, _ = call("ab-invariance", "--q", "1", "--kappa", "0.5", "--points", "21")
    res = json.loads(out)
    assert code == EXIT_OK and res["quantized"] is False
    assert res["max_intensity_deviation"] == pytest.approx(2.0, abs=1e-6)


def test_ab_pattern_csv_golden():
    code, out, _ = call("ab-pattern", "--q", "1", "--B", "0", "--points", "3")
    assert code == EXIT_OK
    # B = 0 leaves the bare fringe 1 + cos(5 y)
    want = "y,intensity\n-3,{:.12g}\n0,2\n3,{:.12g}\n".format(1 + math.cos(-15), 1 + math.cos(15))
    assert out == want


def test_out_file(tmp_path):
    target = tmp_path / "pattern.csv"
    code, out, _ = call("ab-pattern", "--points", "5", "--out", str(target))
    assert code == EXIT_OK and out == ""
    text = target.read_bytes().decode()
    assert text.startswith("y,intensity\n") and text.count("\n") == 6 and "\r" not in text


def test_output_is_byte_identical():
    argv = ("stokes", "--potential", '{"kind":"kappa","kappa":2.7}', "--surface", '{"kind":"disk","radius":1}')
    assert call(*argv)[1] == call(*argv)[1]
    argv = ("ab-pattern", "--points", "31", "--kappa", "0.3")
    assert call(*argv)[1] == call(*argv)[1]


def test_potential_from_file(tmp_path):
    f = tmp_path / "pot.json"
    f.write_text(KAPPA1)
    code, out, _ = call("line-integral", "--potential", f"@{f}", "--path", "unit-circle")
    assert code == EXIT_OK and json.loads(out)["value"] == pytest.approx(2 * math.pi, abs=1e-9)


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "--potential", '{"kind":"bogus"}', "--point", "1,0,0"),
        ("eval", "--potential", '{"kind":"kappa","kappa":1,"extra":2}', "--point", "1,0,0"),
        ("eval", "--potential", "{not json", "--point", "1,0,0"),
        ("eval", "--potential", KAPPA1, "--point", "1,0"),
        ("spectrum", "--N", "0", "--range", "2"),
        ("quantize", "dirac", "--q", "1"),
        ("frobnicate",),
        ("quantize", "dirac", "--q", "1", "--g", "0.5", "--format", "csv"),
    ],
)
def test_malformed_input_exits_1(argv):
    code, out, err = call(*argv)
    assert code == EXIT_INPUT and out == "" and err.startswith("error")


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "--potential", '{"kind":"dirac_i","g":1}', "--point", "0,0,-1"),
        ("eval", "--potential", '{"kind":"ab_solenoid","B":2,"R":1}', "--point", "1,0,0"),
        ("line-integral", "--potential", KAPPA1, "--path", '{"kind":"segment","start":[-1,0,0],"end":[1,0,0]}'),
        ("stokes", "--potential", '{"kind":"ab_solenoid","B":1,"R":1}', "--surface", '{"kind":"disk","radius":1}'),
    ],
)
def test_domain_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == EXIT_DOMAIN and out == "" and err


def test_non_convergence_exits_3():
    path = '{"kind":"circle","radius":1,"center":[1.000001,0,0]}'
    code, out, err = call("line-integral", "--potential", KAPPA1, "--path", path, "--max-refinements", "2")
    assert code == EXIT_CONVERGENCE and out == "" and "converge" in err
