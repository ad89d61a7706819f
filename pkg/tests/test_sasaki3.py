import numpy as np
import pytest

from analise.sasaki3 import AnalisadorSasaki3, GeometriaThurston
from analise.quasi_einstein import AnalisadorQE, TriploQE
from conftest import VALORES_T_BERGER
from dados.catalogo import abeliano, berger, h2_r, nil, su2_redonda
from geometria.curvatura import GeometriaReferencial
from geometria.referencial import MetricaReferencial
from nucleo.erros import (
    ErroDimensao,
    ErroNaoKilling,
    ErroNaoReescalavel,
    ErroParametro,
    ErroPrecondicao,
    ErroSolucaoTrivial,
)


@pytest.fixture
def sasaki():
    return AnalisadorSasaki3()


# ==================== Critério sasakiano ==================== #

def test_redonda_sasakiana(sasaki, su2, redonda):
    sasakiano, desvio = sasaki.verificar_sasaki(su2, redonda, [1, 0, 0])
    assert sasakiano
    assert desvio <= 1e-14


def test_berger_nao_sasakiana_sem_normalizar(sasaki, su2):
    metrica = MetricaReferencial(np.diag([2.0, 1.0, 1.0]))
    sasakiano, desvio = sasaki.verificar_sasaki(su2, metrica, [1 / np.sqrt(2.0), 0, 0])
    assert not sasakiano
    assert desvio > 0.1


def test_xi_nao_unitario(sasaki, su2, redonda):
    with pytest.raises(ErroPrecondicao):
        sasaki.verificar_sasaki(su2, redonda, [2, 0, 0])


def test_xi_nao_killing(sasaki, su2):
    metrica = MetricaReferencial(np.diag([2.0, 1.0, 1.0]))
    with pytest.raises(ErroNaoKilling):
        sasaki.verificar_sasaki(su2, metrica, [0, 1, 0])


def test_dimensao(sasaki):
    entrada = abeliano(4)
    with pytest.raises(ErroDimensao):
        sasaki.verificar_sasaki(entrada.referencial, entrada.metrica, [1, 0, 0, 0])


def test_estrutura_phi(sasaki, su2, redonda):
    estrutura = sasaki.estrutura_sasaki(su2, redonda, [1, 0, 0])
    np.testing.assert_allclose(estrutura.phi @ [1, 0, 0], 0.0, atol=1e-15)
    np.testing.assert_allclose(estrutura.eta, [1, 0, 0])
    horizontal = estrutura.phi[1:, 1:]
    np.testing.assert_allclose(horizontal @ horizontal, -np.eye(2), atol=1e-14)


# ==================== Normalização sasakiana ==================== #

@pytest.mark.parametrize("t", VALORES_T_BERGER)
def test_berger_normalizada_sasakiana(sasaki, t):
    triplo = sasaki.reescalar_para_sasaki(berger(t, 1.0).triplo())
    assert triplo.positividade == pytest.approx(2.0, abs=1e-12)
    assert AnalisadorQE().residuo_qe(triplo)[1] <= 1e-10

    xi = triplo.X.coefs / np.sqrt(triplo.norma_x_quadrada)
    assert sasaki.verificar_sasaki(triplo.referencial, triplo.metrica, xi)[0]


def test_produto_nao_reescalavel(sasaki):
    with pytest.raises(ErroNaoReescalavel):
        sasaki.reescalar_para_sasaki(h2_r().triplo())


# ==================== η-Einstein e curvatura φ-seccional ==================== #

def test_eta_einstein_nil(sasaki):
    entrada = nil(4.0)
    xi = [0, 0, 0.5]
    lam, nu, residuo = sasaki.verificar_eta_einstein(entrada.referencial, entrada.metrica, xi)
    assert lam == pytest.approx(-2.0)
    assert nu == pytest.approx(4.0)
    assert residuo <= 1e-12


def test_triplo_de_eta_einstein_reconstroi_nil(sasaki):
    entrada = nil(4.0)
    triplo = sasaki.triplo_de_eta_einstein(entrada.referencial, entrada.metrica, [0, 0, 0.5], 1.0)
    np.testing.assert_allclose(triplo.X.coefs, [0, 0, 1.0], atol=1e-12)
    assert triplo.lam == pytest.approx(-2.0)


def test_triplo_de_eta_einstein_sinal(sasaki):
    entrada = nil(4.0)
    with pytest.raises(ErroPrecondicao):
        sasaki.triplo_de_eta_einstein(entrada.referencial, entrada.metrica, [0, 0, 0.5], -1.0)


def test_phi_seccional(sasaki, su2, redonda):
    assert sasaki.curvatura_phi_seccional(su2, redonda, [1, 0, 0]) == pytest.approx(1.0, abs=1e-13)
    entrada = nil(4.0)
    H = sasaki.curvatura_phi_seccional(entrada.referencial, entrada.metrica, [0, 0, 0.5])
    assert H == pytest.approx(-3.0, abs=1e-12)


# ==================== D-homotetia ==================== #

@pytest.mark.parametrize("t", [2.0, 3.0])
def test_d_homotetia_preserva_sasaki(sasaki, su2, redonda, t):
    metrica, xi, eta = sasaki.d_homotetia(su2, redonda, [1, 0, 0], t)
    assert metrica.norma_quadrada(xi) == pytest.approx(1.0)
    np.testing.assert_allclose(eta, [t, 0, 0])
    assert sasaki.verificar_sasaki(su2, metrica, xi)[0]
    # H' + 3 = (H + 3)/t
    H = sasaki.curvatura_phi_seccional(su2, metrica, xi)
    assert H == pytest.approx(4.0 / t - 3.0, abs=1e-12)


@pytest.mark.parametrize("t", [2.0, 3.0])
def test_d_homotetia_fixa_nil(sasaki, t):
    entrada = nil(4.0)
    metrica, xi, _ = sasaki.d_homotetia(entrada.referencial, entrada.metrica, [0, 0, 0.5], t)
    assert sasaki.curvatura_phi_seccional(entrada.referencial, metrica, xi) == pytest.approx(-3.0, abs=1e-12)
    lam, nu, residuo = sasaki.verificar_eta_einstein(entrada.referencial, metrica, xi)
    assert residuo <= 1e-12
    triplo = sasaki.triplo_de_eta_einstein(entrada.referencial, metrica, xi, 1.0)
    assert sasaki.classificar_thurston(triplo).geometria is GeometriaThurston.NIL


def test_d_homotetia_t_invalido(sasaki, su2, redonda):
    with pytest.raises(ErroParametro):
        sasaki.d_homotetia(su2, redonda, [1, 0, 0], 0.0)


def _multiplicidades(referencial, metrica, xi):
    """Multiplicidades ordenadas de Ric em relação a g, a de ξ e o resíduo Ric·ξ - μ g·ξ."""
    estrutura = AnalisadorQE().estrutura_ricci(referencial, metrica)
    ricci = GeometriaReferencial(referencial, metrica).ricci
    xi = np.asarray(xi, float)
    mu = float(xi @ ricci @ xi)
    residuo = float(np.max(np.abs(ricci @ xi - mu * metrica.gram @ xi)))
    mult_xi = next(mult for valor, mult in estrutura.grupos if abs(valor - mu) <= 1e-8 * max(1.0, abs(mu)))
    return sorted(mult for _, mult in estrutura.grupos), mult_xi, residuo


@pytest.mark.parametrize("tau", [0.5, 2.0, 3.0])
def test_d_homotetia_preserva_multiplicidades_berger(sasaki, tau):
    triplo = sasaki.reescalar_para_sasaki(berger(1.5, 1.0).triplo())
    xi = triplo.X.coefs / np.sqrt(triplo.norma_x_quadrada)
    antes, mult_antes, residuo = _multiplicidades(triplo.referencial, triplo.metrica, xi)
    assert antes == [1, 2] and mult_antes == 1
    assert residuo <= 1e-12

    metrica, xi_novo, _ = sasaki.d_homotetia(triplo.referencial, triplo.metrica, xi, tau)
    depois, mult_depois, residuo = _multiplicidades(triplo.referencial, metrica, xi_novo.coefs)
    assert depois == antes
    assert mult_depois == mult_antes
    assert residuo <= 1e-12


@pytest.mark.parametrize("tau", [0.5, 2.0, 3.0])
def test_d_homotetia_preserva_multiplicidades_nil(sasaki, tau):
    entrada = nil(4.0)
    xi = [0, 0, 0.5]
    antes, _, _ = _multiplicidades(entrada.referencial, entrada.metrica, xi)
    metrica, xi_novo, _ = sasaki.d_homotetia(entrada.referencial, entrada.metrica, xi, tau)
    depois, mult_xi, residuo = _multiplicidades(entrada.referencial, metrica, xi_novo.coefs)
    assert antes == depois == [1, 2]
    assert mult_xi == 1
    assert residuo <= 1e-12


@pytest.mark.parametrize("tau", [2.0, 3.0])
def test_d_homotetia_mantem_balde_esferico(sasaki, tau):
    original = berger(1.5, 1.0).triplo()
    H = sasaki.classificar_thurston(original).H
    triplo = sasaki.reescalar_para_sasaki(original)
    xi = triplo.X.coefs / np.sqrt(triplo.norma_x_quadrada)

    metrica, xi_novo, _ = sasaki.d_homotetia(triplo.referencial, triplo.metrica, xi, tau)
    deformado = sasaki.triplo_de_eta_einstein(triplo.referencial, metrica, xi_novo, 1.0)
    resultado = sasaki.classificar_thurston(deformado)
    assert resultado.geometria is GeometriaThurston.ESFERICA
    assert resultado.H + 3.0 == pytest.approx((H + 3.0) / tau, abs=1e-10)


# ==================== Classificação ==================== #

@pytest.mark.parametrize("t", VALORES_T_BERGER)
def test_classifica_berger(sasaki, t):
    resultado = sasaki.classificar_thurston(berger(t, 1.0).triplo())
    assert resultado.geometria is GeometriaThurston.ESFERICA
    assert resultado.sasakiano
    assert resultado.H > -3.0
    assert resultado.escala_sasaki == pytest.approx(t)


def test_classifica_nil(sasaki):
    resultado = sasaki.classificar_thurston(nil().triplo())
    assert resultado.geometria is GeometriaThurston.NIL
    assert resultado.H == pytest.approx(-3.0, abs=1e-10)
    assert resultado.para_dict()["bucket"] == "Nil"


def test_classifica_produto(sasaki):
    resultado = sasaki.classificar_thurston(h2_r().triplo())
    assert resultado.geometria is GeometriaThurston.PRODUTO
    assert resultado.H is None


def test_classifica_trivial(sasaki):
    with pytest.raises(ErroSolucaoTrivial):
        sasaki.classificar_thurston(su2_redonda().triplo())


def test_classifica_exige_qe(sasaki):
    triplo = berger(2.0).triplo()
    errado = TriploQE(triplo.referencial, triplo.metrica, triplo.X, triplo.m, 1.0)
    with pytest.raises(ErroPrecondicao):
        sasaki.classificar_thurston(errado)


@pytest.mark.parametrize("c", [0.5, 3.0])
@pytest.mark.parametrize("fabrica", [lambda: berger(2.0, 1.0), lambda: nil(4.0), h2_r])
def test_classificacao_invariante_por_homotetia(sasaki, fabrica, c):
    triplo = fabrica().triplo()
    original = sasaki.classificar_thurston(triplo)
    escalado = sasaki.classificar_thurston(triplo.reescalado(c * c))
    assert escalado.geometria is original.geometria
    if original.H is None:
        assert escalado.H is None
    else:
        assert escalado.H == pytest.approx(original.H, abs=1e-9)
        assert np.sign(round(escalado.H + 3.0, 9)) == np.sign(round(original.H + 3.0, 9))
