import numpy as np
import pytest

from analise.quasi_einstein import AnalisadorQE, TriploQE
from conftest import VALORES_M_BERGER, VALORES_T_BERGER
from dados.catalogo import abeliano, berger, h2_r, nil
from fibrados.submersao import AnalisadorSubmersao
from geometria.referencial import MetricaReferencial, VetorReferencial
from nucleo.erros import (
    ErroDimensao,
    ErroFibracaoInvalida,
    ErroHipoteseVertical,
    ErroPrecondicao,
)


@pytest.fixture
def submersao():
    return AnalisadorSubmersao()


@pytest.fixture
def hopf(submersao, su2, redonda):
    return submersao.construir(su2, redonda, 0)


# ==================== Fibração de Hopf ==================== #

def test_hopf_tensores(hopf):
    assert hopf.dim == 3
    assert hopf.dim_base == 2
    assert hopf.norma_a_quadrada == pytest.approx(2.0, abs=1e-14)
    assert hopf.norma_omega_quadrada == pytest.approx(8.0, abs=1e-13)
    assert hopf.omega[0, 1] == pytest.approx(-2.0)
    np.testing.assert_allclose(hopf.ricci_base, 4.0 * np.eye(2), atol=1e-13)
    assert hopf.a_vertical == pytest.approx(2.0, abs=1e-14)
    assert not hopf.avisos


def test_hopf_yang_mills(submersao, hopf):
    ym, residuo = submersao.verificar_yang_mills(hopf)
    assert ym
    assert residuo <= 1e-14


def test_hopf_condicoes_qe(submersao, hopf):
    relatorio = submersao.verificar_qe_submersao(hopf, 1.0, [0, 0, 0])
    assert relatorio.aprovado
    assert relatorio.lam == pytest.approx(2.0)
    assert submersao.verificar_forma_omega(hopf, 1.0, [0, 0, 0]).aprovado
    assert submersao.verificar_forma_omega(hopf, 1.0, [0, 0, 0], base=4.0).aprovado
    assert not submersao.verificar_forma_omega(hopf, 1.0, [0, 0, 0], base=3.0).aprovado


def test_hopf_quase_kahler(submersao, hopf):
    assert submersao.lambda_base_einstein(hopf) == pytest.approx(4.0)
    estrutura = submersao.estrutura_quase_kahler(hopf, 1.0, 0.0)
    assert estrutura.kappa == pytest.approx(2.0)
    np.testing.assert_allclose(estrutura.J_normalizado @ estrutura.J_normalizado, -np.eye(2), atol=1e-12)
    np.testing.assert_allclose(estrutura.J, hopf.omega.T)
    assert not estrutura.produto_trivial


def test_direcao_vertical_por_vetor(submersao, su2, redonda, hopf):
    sd = submersao.construir(su2, redonda, VetorReferencial([3.0, 0.0, 0.0]))
    np.testing.assert_allclose(sd.vertical.coefs, [1, 0, 0])
    assert sd.norma_a_quadrada == pytest.approx(hopf.norma_a_quadrada)


# ==================== Berger ==================== #

@pytest.mark.parametrize("m", VALORES_M_BERGER)
@pytest.mark.parametrize("t", VALORES_T_BERGER)
def test_berger_equivalencia(submersao, t, m):
    entrada = berger(t, m)
    triplo = entrada.triplo()
    sd = submersao.construir(entrada.referencial, entrada.metrica, entrada.vertical)

    assert sd.norma_a_quadrada == pytest.approx(2.0 * t)
    assert submersao.norma_x_vertical(sd, triplo.X) == pytest.approx(triplo.norma_x_quadrada)
    assert AnalisadorQE().residuo_qe(triplo)[1] <= 1e-10
    assert submersao.verificar_qe_submersao(sd, m, triplo.X, triplo.lam).aprovado
    assert submersao.verificar_qe_submersao(sd, m, triplo.X).aprovado
    assert submersao.verificar_forma_omega(sd, m, triplo.X).aprovado


@pytest.mark.parametrize("t", [1.5, 2.0, 3.0])
def test_berger_kappa(submersao, t):
    entrada = berger(t, 1.0)
    sd = submersao.construir(entrada.referencial, entrada.metrica, 0)
    x2 = submersao.norma_x_vertical(sd, entrada.triplo().X)
    estrutura = submersao.estrutura_quase_kahler(sd, 1.0, x2)
    assert estrutura.kappa == pytest.approx(2.0 * np.sqrt(t))
    np.testing.assert_allclose(estrutura.J_normalizado @ estrutura.J_normalizado, -np.eye(2), atol=1e-12)


# ==================== Casos negativos ==================== #

@pytest.mark.parametrize("eps", np.linspace(0.05, 0.35, 20))
def test_perturbacao_nao_qe_em_nenhum_criterio(submersao, qe, su2, eps):
    gram = np.eye(3)
    gram[0, 1] = gram[1, 0] = eps
    metrica = MetricaReferencial(gram)

    sd = submersao.construir(su2, metrica, 0, estrito=False)
    assert sd.avisos

    lam, _ = qe.ajustar_lambda(su2, metrica, [0, 0, 0], 1.0)
    _, residuo = qe.residuo_qe(TriploQE(su2, metrica, [0, 0, 0], 1.0, lam))
    assert residuo > 1e-6
    assert not submersao.verificar_yang_mills(sd)[0]
    assert not submersao.verificar_qe_submersao(sd, 1.0, [0, 0, 0], lam).aprovado
    assert not submersao.verificar_forma_omega(sd, 1.0, [0, 0, 0]).aprovado


def test_vertical_nao_killing_estrito(submersao, su2):
    with pytest.raises(ErroFibracaoInvalida):
        submersao.construir(su2, MetricaReferencial(np.diag([1.0, 1.1, 1.0])), 0)


def test_x_horizontal_rejeitado(submersao, hopf):
    with pytest.raises(ErroHipoteseVertical):
        submersao.norma_x_vertical(hopf, [0, 1, 0])


def test_base_impar(submersao):
    entrada = abeliano(4)
    sd = submersao.construir(entrada.referencial, entrada.metrica, 0)
    with pytest.raises(ErroDimensao):
        submersao.estrutura_quase_kahler(sd, 1.0, 0.0)


def test_produto_trivial(submersao):
    entrada = h2_r()
    triplo = entrada.triplo()
    sd = submersao.construir(entrada.referencial, entrada.metrica, 2)
    assert sd.norma_a_quadrada == pytest.approx(0.0, abs=1e-14)
    x2 = submersao.norma_x_vertical(sd, triplo.X)
    assert submersao.lambda_base_einstein(sd) == pytest.approx(-1.0)
    estrutura = submersao.estrutura_quase_kahler(sd, triplo.m, x2)
    assert estrutura.produto_trivial
    assert estrutura.J is None


def test_lambda_base_negativo(submersao):
    entrada = h2_r()
    sd = submersao.construir(entrada.referencial, entrada.metrica, 2)
    with pytest.raises(ErroPrecondicao):
        submersao.estrutura_quase_kahler(sd, 1.0, 0.0)


def test_nil_submersao(submersao):
    entrada = nil(4.0)
    triplo = entrada.triplo()
    sd = submersao.construir(entrada.referencial, entrada.metrica, entrada.vertical)
    assert submersao.verificar_qe_submersao(sd, triplo.m, triplo.X, triplo.lam).aprovado
    assert submersao.verificar_forma_omega(sd, triplo.m, triplo.X).aprovado
    # Řic da base plana é nulo: λ̌ + |X|²/m = 4
    assert submersao.lambda_base_einstein(sd) == pytest.approx(0.0, abs=1e-12)
