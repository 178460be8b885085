//! Discrepancies between the reference formulas and what the numerics
//! establish. Each entry names the construct, the reference form, the
//! verified form and the check that adjudicates it. The list is attached to
//! every verification report regardless of outcome.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub construct: &'static str,
    pub reference_form: &'static str,
    pub verified_form: &'static str,
    /// Name of the verification check that settles the entry, if any.
    pub check: Option<&'static str>,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        id: "h4-phase-space-label",
        construct: "h4/phase-space-parameter",
        reference_form: "alpha = sqrt(m w / hbar) x0 + i p0 / sqrt(2 m w hbar)",
        verified_form: "alpha = sqrt(m w / (2 hbar)) x0 + i p0 / sqrt(2 m w hbar); the real part needs the same 1/sqrt(2) as the imaginary part, and the Landau tilt alpha = beta d / sqrt(2) = -nu/mu confirms it",
        check: Some("landau.tilt-removes-linear-terms"),
    },
    Erratum {
        id: "h4-wavefunction-normalization",
        construct: "h4/displaced-wavefunction",
        reference_form: "N_n = (beta / (pi^{1/4} 2^n n!))^{1/2}",
        verified_form: "N_n = (beta / (sqrt(pi) 2^n n!))^{1/2}; the reference constant does not give unit norm",
        check: Some("landau.eigenfunction-norm"),
    },
    Erratum {
        id: "h4-ladder-direction",
        construct: "h4/transformed-ladder",
        reference_form: "A = D^dag a D = a + alpha lowers D(alpha)|n>",
        verified_form: "D^dag a D = a + alpha holds, but the operator that lowers D(alpha)|n> is D a D^dag = a - alpha (with a^dag - alpha* raising)",
        check: Some("h4.displaced-ladder"),
    },
    Erratum {
        id: "su11-standard-state-gamma-index",
        construct: "su11/standard-coherent-state",
        reference_form: "coefficient sqrt(Gamma(n + 2k) / (s! Gamma(2k))) zeta^s summed over s",
        verified_form: "Gamma(s + 2k): the summation index is s; the first column of the exponential matches only this reading",
        check: Some("su11.standard-state-vs-exponential"),
    },
    Erratum {
        id: "su11-ladder-undefined-coefficients",
        construct: "su11/transformed-ladder",
        reference_form: "closed forms for D K± D^dag written with coefficients alpha, beta that are never defined",
        verified_form: "L± are taken as the numerical conjugation D K± D^dag, which satisfies the ladder relations on D(xi)|k,n>",
        check: Some("su11.displaced-ladder"),
    },
    Erratum {
        id: "landau-tilted-hamiltonian-sign",
        construct: "landau/tilted-hamiltonian",
        reference_form: "D^dag H D = mu (a^dag a + |alpha|^2 + 1/2) - nu (alpha + alpha*) + a^dag (alpha mu - nu) + a (alpha* mu - nu)",
        verified_form: "D^dag H D = mu (a^dag a + |alpha|^2 + 1/2) + nu (alpha + alpha*) + a^dag (alpha mu + nu) + a (alpha* mu + nu); the linear terms vanish at alpha = -nu/mu, i.e. y0 = +d",
        check: Some("landau.tilt-removes-linear-terms"),
    },
    Erratum {
        id: "symmetric-gauge-laguerre-argument",
        construct: "symmetric/closed-form",
        reference_form: "L_n^m(rho^2 sigma / ((1 - zeta)(1 - sigma))) with sigma = (1 - |zeta|^2) / ((1 - zeta)(-zeta*))",
        verified_form: "L_n^m(rho^2 sigma / ((1 - zeta)(1 + sigma))) = L_n^m(rho^2 (1 - |zeta|^2) / |1 - zeta|^2); the reference form agrees with the term-by-term resummation only at n = 0",
        check: Some("symmetric.closed-form-vs-resummation"),
    },
    Erratum {
        id: "symmetric-gauge-phase-and-norm",
        construct: "symmetric/closed-form",
        reference_form: "prefactor (-1)^n / sqrt(pi) and (-zeta*)^n (1 + sigma)^n",
        verified_form: "(-zeta*)^n (1 + sigma)^n = ((1 - zeta*) / (1 - zeta))^n is a pure phase, so the state is regular at zeta = 0; the extra (-1)^n is a global phase; unit norm under rho d rho d phi needs 1/sqrt(2 pi)",
        check: Some("symmetric.closed-form-vs-resummation"),
    },
    Erratum {
        id: "contraction-commutator-limit",
        construct: "contraction/commutators",
        reference_form: "[h-, h+] = h0 in the limit c -> 0",
        verified_form: "[h-, h+] = I + 2 c^2 diag(n) -> I, consistent with [a, a^dag] = I; h0 = diag(n) is the number operator",
        check: Some("contraction.commutator-order"),
    },
    Erratum {
        id: "contraction-exponent-limit",
        construct: "contraction/exponent-limit",
        reference_form: "(1 - c^2 |alpha|^2)^{1/(2c^2)} -> e^{-|alpha|^2}",
        verified_form: "(1 - c^2 |alpha|^2)^{1/(2c^2)} -> e^{-|alpha|^2/2} with error c^2 |alpha|^4 e^{-|alpha|^2/2} / 4 + O(c^4)",
        check: Some("contraction.exponent-limit"),
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = ERRATA.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), ERRATA.len());
    }
}
