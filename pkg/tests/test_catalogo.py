import dataclasses
import json

import numpy as np
import pytest

from analise.sasaki3 import GeometriaThurston
from dados.carregador import ArquivoProblema, CarregadorProblema
from dados.catalogo import SolucaoConhecida, berger, nil
from nucleo.erros import ErroEntrada, ErroInvariante, ErroParametro


# ==================== Catálogo ==================== #

def test_nomes(catalogo):
    assert catalogo.nomes() == ["abelian", "su2_round", "berger", "nil", "h2_r", "su2_perturbed"]


def test_entradas_verificadas(catalogo, qe):
    for entrada in catalogo.entradas():
        for indice in range(len(entrada.solucoes)):
            assert qe.residuo_qe(entrada.triplo(indice))[1] <= 1e-10


def test_por_nome(catalogo):
    entrada = catalogo.por_nome("nil")
    assert entrada.geometria_esperada is GeometriaThurston.NIL
    assert entrada.vertical == 2
    with pytest.raises(ErroEntrada, match="desconhecida"):
        catalogo.por_nome("sl2")


def test_h2_r_nao_compacto(catalogo):
    entrada = catalogo.por_nome("h2_r")
    assert entrada.compacto is False
    assert entrada.triplo().compacto is False


@pytest.mark.parametrize("fabrica, kwargs", [
    (berger, {"t": 0.0}),
    (berger, {"t": 0.5, "m": 1.0}),
    (berger, {"t": 2.0, "m": 0.0}),
    (nil, {"a": -1.0}),
    (nil, {"a": 4.0, "m": -1.0}),
])
def test_fabricas_invalidas(fabrica, kwargs):
    with pytest.raises(ErroParametro):
        fabrica(**kwargs)


def test_berger_m_negativo():
    entrada = berger(0.5, -1.0)
    assert entrada.solucoes[0].X.coefs[0] == pytest.approx(2.0)
    assert entrada.solucoes[0].lam == pytest.approx(3.0)


# ==================== Arquivo de problema ==================== #

def test_para_problema_1_based():
    problema = nil().para_problema()
    assert problema.vertical == 3
    assert problema.indice_vertical == 2
    assert problema.brackets[0].i == 1 and problema.brackets[0].k == 3
    dados = problema.para_json()
    assert dados["lambda"] == pytest.approx(-2.0)
    assert "lam" not in dados


def test_exportar_e_recarregar(catalogo, tmp_path):
    caminhos = catalogo.exportar(str(tmp_path))
    assert set(caminhos) == set(catalogo.nomes())

    problema = CarregadorProblema(str(caminhos["berger"])).carregar()
    entrada = catalogo.por_nome("berger")
    np.testing.assert_allclose(problema.para_metrica().gram, entrada.metrica.gram)
    np.testing.assert_allclose(problema.para_referencial().colchetes, entrada.referencial.colchetes)
    np.testing.assert_allclose(problema.para_vetor().coefs, entrada.solucoes[0].X.coefs)
    assert problema.lam == pytest.approx(0.0)


def test_perturbada_sem_solucao(catalogo):
    problema = catalogo.por_nome("su2_perturbed").para_problema()
    assert problema.X is None and problema.m is None
    assert problema.para_vetor().eh_nulo()


@pytest.mark.parametrize("conteudo", [
    "",
    "{ nao é json",
    json.dumps({"dim": 3, "metric": [[1, 0], [0, 1]]}),
    json.dumps({"dim": 2, "metric": [[1, 0], [0, 1]], "brackets": [{"i": 1, "j": 3, "k": 1, "c": 1}]}),
    json.dumps({"dim": 2, "metric": [[1, 0], [0, 1]], "m": 0}),
    json.dumps({"dim": 2, "metric": [[1, 0], [0, 1]], "extra": 1}),
    json.dumps({"dim": 2, "metric": [[1, 0], [0, 1]], "X": [1, 0, 0]}),
])
def test_arquivo_invalido(tmp_path, conteudo):
    caminho = tmp_path / "problema.json"
    caminho.write_text(conteudo, encoding="utf-8")
    with pytest.raises(ErroEntrada):
        CarregadorProblema(str(caminho)).carregar()


def test_arquivo_inexistente(tmp_path):
    carregador = CarregadorProblema(str(tmp_path / "nada.json"))
    with pytest.raises(ErroEntrada, match="não encontrado"):
        carregador.carregar()
    assert carregador.info_arquivo() == {"status": "Arquivo não existe"}


def test_aviso_extensao(tmp_path):
    caminho = tmp_path / "problema.txt"
    caminho.write_text(json.dumps({"dim": 1, "metric": [[2.0]]}), encoding="utf-8")
    carregador = CarregadorProblema(str(caminho))
    problema = carregador.carregar()
    assert problema.dim == 1
    assert carregador.avisos and "⚠️" in carregador.avisos[0]


def test_jacobi_no_arquivo():
    problema = ArquivoProblema.model_validate({
        "dim": 3,
        "metric": np.eye(3).tolist(),
        "brackets": [{"i": 1, "j": 2, "k": 3, "c": 1.0}, {"i": 1, "j": 3, "k": 1, "c": 1.0}],
    })
    with pytest.raises(ErroEntrada, match="Jacobi"):
        problema.para_referencial()


# ==================== Verificação pública ==================== #

def test_verificar_aceita_berger_e_rejeita_lambda_errado(catalogo):
    entrada = berger(3.0, 2.0)
    catalogo.verificar(entrada)

    solucao = entrada.solucoes[0]
    errada = dataclasses.replace(
        entrada, solucoes=[SolucaoConhecida(solucao.X, solucao.m, solucao.lam + 0.5)]
    )
    with pytest.raises(ErroInvariante, match="resíduo"):
        catalogo.verificar(errada)
