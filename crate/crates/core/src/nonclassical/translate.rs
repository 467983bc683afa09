//! The translations `t`, `t₀` and `t₁` into languages with extended atoms.

use crate::formula::Formula;

/// `⊥ᵗ = ⊥`, `⊤ᵗ = ⟨⊤⟩`, `pᵗ = ⟨p⟩`, `(φ∘ψ)ᵗ = (φᵗ∘ψᵗ) ∧ ⟨φ∘ψ⟩`.
///
/// `¬φ` is read as `φ → ⊥` and big connectives as nested binary ones.
pub fn translate_t(f: &Formula) -> Formula {
    t(&f.to_lp())
}

fn t(f: &Formula) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Top | Formula::Atom(_) | Formula::Ext(_) => Formula::ext(f.clone()),
        Formula::And(a, b) => Formula::and(Formula::and(t(a), t(b)), Formula::ext(f.clone())),
        Formula::Or(a, b) => Formula::and(Formula::or(t(a), t(b)), Formula::ext(f.clone())),
        Formula::Imp(a, b) => Formula::and(Formula::imp(t(a), t(b)), Formula::ext(f.clone())),
        // Outside L_p; kept homomorphic.
        _ => f.map_children(t),
    }
}

fn modal(f: &Formula, one: bool) -> Formula {
    match f {
        Formula::Box(a) => {
            let tag = Formula::ext(f.clone());
            if one {
                Formula::and(modal(a, one), tag)
            } else {
                tag
            }
        }
        _ => f.map_children(|c| modal(c, one)),
    }
}

/// `(□φ)^{t₀} = ⟨□φ⟩`, homomorphic elsewhere.
pub fn translate_t0(f: &Formula) -> Formula {
    modal(f, false)
}

/// `(□φ)^{t₁} = φ^{t₁} ∧ ⟨□φ⟩`, homomorphic elsewhere.
pub fn translate_t1(f: &Formula) -> Formula {
    modal(f, true)
}
