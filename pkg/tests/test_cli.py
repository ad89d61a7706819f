import io
import json
import math

import pandas as pd
import pytest

from nucleo.cli import SAIDA_ENTRADA, SAIDA_FALHOU, SAIDA_OK, SAIDA_PRECONDICAO, ler_grade, main
from nucleo.erros import ErroEntrada
from nucleo.politica import POLITICA_PADRAO


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture(scope="module")
def pasta_catalogo(tmp_path_factory):
    pasta = tmp_path_factory.mktemp("catalogo")
    assert main(["catalog", "--out", str(pasta), "--quiet"]) == SAIDA_OK
    return pasta


# ==================== Grade ==================== #

def test_ler_grade():
    assert ler_grade("1:0.5:3") == pytest.approx([1.0, 1.5, 2.0, 2.5, 3.0])
    assert ler_grade("0.5, 2,4") == [0.5, 2.0, 4.0]
    assert ler_grade("1:1:1") == [1.0]


@pytest.mark.parametrize("texto", ["1:0:3", "3:1:1", "1:2", "a,b"])
def test_ler_grade_invalida(texto):
    with pytest.raises(ErroEntrada):
        ler_grade(texto)


# ==================== catalog ==================== #

def test_catalog(pasta_catalogo, capsys):
    nomes = sorted(p.stem for p in pasta_catalogo.glob("*.json"))
    assert nomes == sorted(["abelian", "su2_round", "berger", "nil", "h2_r", "su2_perturbed"])


# ==================== verify ==================== #

def test_verify_redonda(capsys):
    assert main(["verify", "--entry", "su2_round", "--quiet"]) == SAIDA_OK
    relatorio = _json(capsys)
    assert relatorio["residual_norm"] == pytest.approx(0.0, abs=1e-14)
    assert relatorio["lambda_fit"] == pytest.approx(2.0)
    assert relatorio["verified"] is True
    assert relatorio["trivial"] is True
    assert relatorio["positivity_trichotomy"] is None
    assert relatorio["exclusion_check"] is True
    assert relatorio["submersion"]["a_norm_sq"] == pytest.approx(2.0)
    assert relatorio["submersion"]["almost_kahler"]["kappa"] == pytest.approx(2.0)


def test_verify_arquivo_nil(pasta_catalogo, capsys):
    assert main(["verify", str(pasta_catalogo / "nil.json"), "--quiet"]) == SAIDA_OK
    relatorio = _json(capsys)
    assert relatorio["residual_norm"] <= 1e-12
    assert relatorio["lambda"] == pytest.approx(-2.0)
    assert relatorio["is_killing"] is True
    assert relatorio["positivity_trichotomy"]["case"] == "StrictlyPositive"
    assert relatorio["submersion"]["qe_conditions"]["passed"] is True


def test_verify_lambda_errado(capsys):
    assert main(["verify", "--entry", "su2_round", "--lambda", "2.5", "--quiet"]) == SAIDA_FALHOU
    assert _json(capsys)["verified"] is False


def test_verify_tol(capsys):
    args = ["verify", "--entry", "su2_round", "--lambda", "2.0000001", "--quiet"]
    assert main(args) == SAIDA_FALHOU
    assert main(args + ["--tol", "1e-6"]) == SAIDA_OK


def test_tol_alcanca_validacao_de_jacobi(tmp_path, capsys):
    # [e3, e1] = 2e2 + δe3 quebra Jacobi em 2δ
    caminho = tmp_path / "quase_su2.json"
    caminho.write_text(json.dumps({
        "dim": 3,
        "metric": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "brackets": [
            {"i": 1, "j": 2, "k": 3, "c": 2},
            {"i": 2, "j": 3, "k": 1, "c": 2},
            {"i": 3, "j": 1, "k": 2, "c": 2},
            {"i": 3, "j": 1, "k": 3, "c": 1e-8},
        ],
        "m": 1,
    }), encoding="utf-8")
    assert main(["verify", str(caminho), "--quiet"]) == SAIDA_ENTRADA
    assert "Jacobi" in capsys.readouterr().err
    assert main(["verify", str(caminho), "--tol", "1e-6", "--quiet"]) in (SAIDA_OK, SAIDA_FALHOU)
    assert POLITICA_PADRAO.com_tolerancia(1e-6).validacao == 1e-6


def test_verify_lambda_ajustado(pasta_catalogo, tmp_path, capsys):
    dados = json.loads((pasta_catalogo / "berger.json").read_text(encoding="utf-8"))
    del dados["lambda"]
    caminho = tmp_path / "sem_lambda.json"
    caminho.write_text(json.dumps(dados), encoding="utf-8")
    assert main(["verify", str(caminho), "--quiet"]) == SAIDA_OK
    assert _json(capsys)["lambda"] == pytest.approx(0.0, abs=1e-12)


def test_verify_jacobi_violado(tmp_path, capsys):
    caminho = tmp_path / "ruim.json"
    caminho.write_text(json.dumps({
        "dim": 3,
        "metric": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "brackets": [{"i": 1, "j": 2, "k": 3, "c": 1}, {"i": 1, "j": 3, "k": 1, "c": 1}],
        "m": 1,
    }), encoding="utf-8")
    assert main(["verify", str(caminho), "--quiet"]) == SAIDA_ENTRADA
    assert "Jacobi" in capsys.readouterr().err


def test_verify_sem_arquivo(tmp_path):
    assert main(["verify", str(tmp_path / "nada.json"), "--quiet"]) == SAIDA_ENTRADA
    assert main(["verify", "--quiet"]) == SAIDA_ENTRADA


def test_verify_sem_m(tmp_path):
    caminho = tmp_path / "sem_m.json"
    caminho.write_text(json.dumps({"dim": 1, "metric": [[1.0]]}), encoding="utf-8")
    assert main(["verify", str(caminho), "--quiet"]) == SAIDA_ENTRADA
    assert main(["verify", str(caminho), "--m", "1", "--quiet"]) == SAIDA_OK


def test_verify_json_em_arquivo(tmp_path, capsys):
    destino = tmp_path / "saida" / "relatorio.json"
    assert main(["verify", "--entry", "berger", "--json", str(destino), "--quiet"]) == SAIDA_OK
    assert capsys.readouterr().out == ""
    assert json.loads(destino.read_text(encoding="utf-8"))["verified"] is True


def test_verify_mensagens_em_stderr(capsys):
    assert main(["verify", "--entry", "nil"]) == SAIDA_OK
    saida = capsys.readouterr()
    assert "✅" in saida.err
    json.loads(saida.out)


# ==================== variation ==================== #

def test_variation_hopf(tmp_path):
    destino = tmp_path / "hopf.csv"
    codigo = main([
        "variation", "--entry", "su2_round", "--m", "1", "--t-grid", "0.5:0.5:3",
        "--csv", str(destino), "--quiet",
    ])
    assert codigo == SAIDA_OK

    bruto = destino.read_bytes()
    assert bruto.startswith(b"t,c_t,lambda_t,residual,scal,status\r\n")

    tabela = pd.read_csv(destino)
    linha = tabela[tabela["t"] == 2.0].iloc[0]
    assert linha["c_t"] == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert linha["lambda_t"] == pytest.approx(0.0, abs=1e-12)
    assert linha["status"] == "ok"

    inadmissivel = tabela[tabela["t"] == 0.5].iloc[0]
    assert inadmissivel["status"] == "inadmissible"
    assert math.isnan(inadmissivel["c_t"])


def test_variation_stdout(capsys):
    assert main(["variation", "--entry", "su2_round", "--m", "1", "--t-grid", "1,2", "--quiet"]) == SAIDA_OK
    tabela = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(tabela.columns) == ["t", "c_t", "lambda_t", "residual", "scal", "status"]
    assert len(tabela) == 2


def test_variation_base_nao_einstein(tmp_path):
    destino = tmp_path / "relatorio.json"
    codigo = main([
        "variation", "--entry", "su2_perturbed", "--m", "1", "--t-grid", "2",
        "--json", str(destino), "--quiet",
    ])
    assert codigo == SAIDA_FALHOU
    relatorio = json.loads(destino.read_text(encoding="utf-8"))
    assert relatorio["counts"]["not_qe"] == 1
    assert relatorio["warnings"]


def test_variation_sem_vertical(tmp_path):
    caminho = tmp_path / "sem_vertical.json"
    caminho.write_text(json.dumps({"dim": 3, "metric": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "m": 1}), encoding="utf-8")
    assert main(["variation", str(caminho), "--quiet"]) == SAIDA_ENTRADA


@pytest.mark.parametrize("lam, codigo_esperado, confere", [
    ("0", SAIDA_OK, True),
    ("0.5", SAIDA_FALHOU, False),
])
def test_variation_lambda(tmp_path, lam, codigo_esperado, confere):
    destino = tmp_path / "relatorio.json"
    codigo = main([
        "variation", "--entry", "berger", "--m", "1", "--lambda", lam, "--t-grid", "1,2",
        "--csv", str(tmp_path / "berger.csv"), "--json", str(destino), "--quiet",
    ])
    assert codigo == codigo_esperado
    relatorio = json.loads(destino.read_text(encoding="utf-8"))
    assert relatorio["given_lambda"] == pytest.approx(float(lam))
    assert relatorio["lambda_1"] == pytest.approx(0.0, abs=1e-12)
    assert relatorio["lambda_matches"] is confere
    assert any("λ informado" in aviso for aviso in relatorio["warnings"]) is not confere


# ==================== classify ==================== #

@pytest.mark.parametrize("entrada, balde", [
    ("berger", "Spherical"),
    ("nil", "Nil"),
    ("h2_r", "ProductSplit"),
])
def test_classify(entrada, balde, capsys):
    assert main(["classify", "--entry", entrada, "--quiet"]) == SAIDA_OK
    relatorio = _json(capsys)
    assert relatorio["bucket"] == balde
    if balde == "Nil":
        assert relatorio["H"] == pytest.approx(-3.0, abs=1e-10)
    if balde == "Spherical":
        assert relatorio["sasakian"] is True


def test_classify_trivial(capsys):
    assert main(["classify", "--entry", "su2_round", "--quiet"]) == SAIDA_PRECONDICAO
    assert "trivial" in capsys.readouterr().err


# ==================== solve ==================== #

def test_solve_abeliano(capsys):
    assert main(["solve", "--entry", "abelian", "--m", "1", "--starts", "8", "--quiet"]) == SAIDA_OK
    saida = _json(capsys)
    assert saida["records"]
    assert all(r["trivial"] for r in saida["records"])
    assert saida["report"]["inicios"] == 8


def test_solve_m_invalido():
    assert main(["solve", "--entry", "abelian", "--m", "0", "--quiet"]) == SAIDA_ENTRADA


def test_solve_varredura(capsys):
    codigo = main([
        "solve", "--entry", "su2_round", "--m", "1", "--starts", "32", "--t-grid", "1,3", "--quiet",
    ])
    assert codigo == SAIDA_OK
    varredura = _json(capsys)["lambda_scan"]
    assert varredura["t_zero"] == pytest.approx(2.0, abs=1e-8)
    assert [linha["sign"] for linha in varredura["table"]] == [1, -1]
