"""
Módulo: Política Numérica
Concentra todas as tolerâncias usadas pelo kit num único valor imutável.
"""

from dataclasses import dataclass, replace

from nucleo.erros import ErroParametro


@dataclass(frozen=True)
class PoliticaNumerica:
    """
    Tolerâncias do kit.

    Attributes:
        estrutural: identidades estruturais (Bianchi, Killing, resíduos exatos)
        validacao: validação de entrada (Jacobi, simetria, |ξ| = 1)
        precondicao_qe: resíduo máximo para aceitar um triplo como quasi-Einstein
        multiplicidade: agrupamento de autovalores
        sasaki: desvio de Sec(ξ, ·) = 1 e fronteira H = -3
        plano_degenerado: denominador mínimo da curvatura seccional
        phi_degenerado: |φ(Y)| mínimo
    """

    estrutural: float = 1e-10
    validacao: float = 1e-12
    precondicao_qe: float = 1e-8
    multiplicidade: float = 1e-8
    sasaki: float = 1e-8
    plano_degenerado: float = 1e-14
    phi_degenerado: float = 1e-12

    def com_tolerancia(self, tol: float) -> "PoliticaNumerica":
        """Sobrescreve as tolerâncias de verificação (flag --tol da CLI)."""
        if not tol > 0:
            raise ErroParametro(f"❌ Tolerância precisa ser positiva: {tol}")
        return replace(
            self,
            estrutural=tol,
            validacao=tol,
            precondicao_qe=tol,
            multiplicidade=tol,
            sasaki=tol,
        )


POLITICA_PADRAO = PoliticaNumerica()
