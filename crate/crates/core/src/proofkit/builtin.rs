use std::sync::OnceLock;

use super::{parse_scripts, ProofScript, Registry};

const BASE: &str = "\
id: C_not_box_not
logic: L
target: ~[]~(PHI & PSI) -> ~[]~PHI
1. ~PHI -> ~(PHI & PSI) ; taut
2. []~PHI -> []~(PHI & PSI) ; rm_box 1
3. ~[]~(PHI & PSI) -> ~[]~PHI ; pl 2

id: C_B_inv
logic: L
target: B(PHI & PSI) -> B PHI & B PSI
1. PHI & PSI -> PHI ; taut
2. B(PHI & PSI) -> B PHI ; rm_b 1
3. PHI & PSI -> PSI ; taut
4. B(PHI & PSI) -> B PSI ; rm_b 3
5. B(PHI & PSI) -> B PHI & B PSI ; pl 2,4

id: K_cond
logic: L
target: (PHI > PSI) & (PHI > (PSI -> CHI)) -> (PHI > CHI)
1. (PHI > PSI) & (PHI > (PSI -> CHI)) -> (PHI > (PSI & (PSI -> CHI))) ; ax C_cond [chi=PHI, phi=PSI, psi=PSI -> CHI]
2. PSI & (PSI -> CHI) -> CHI ; taut
3. (PHI > (PSI & (PSI -> CHI))) -> (PHI > CHI) ; rm_cond 2 PHI
4. (PHI > PSI) & (PHI > (PSI -> CHI)) -> (PHI > CHI) ; pl 1,3

id: A_star1_diamond_0
logic: L
target: B(PHI > PSI) & B(PHI > (PSI -> CHI)) -> B(PHI > CHI)
1. B(PHI > PSI) & B(PHI > (PSI -> CHI)) -> B((PHI > PSI) & (PHI > (PSI -> CHI))) ; ax C_B [phi=(PHI > PSI), psi=(PHI > (PSI -> CHI))]
2. (PHI > PSI) & (PHI > (PSI -> CHI)) -> (PHI > CHI) ; ax K_cond
3. B((PHI > PSI) & (PHI > (PSI -> CHI))) -> B(PHI > CHI) ; rm_b 2
4. B(PHI > PSI) & B(PHI > (PSI -> CHI)) -> B(PHI > CHI) ; pl 1,3

id: RM_not_box_not
logic: L
premise: PHI -> PSI
target: ~[]~PHI -> ~[]~PSI
1. PHI -> PSI ; hyp
2. ~PSI -> ~PHI ; pl 1
3. []~PSI -> []~PHI ; rm_box 2
4. ~[]~PHI -> ~[]~PSI ; pl 3

id: N_B
logic: L
premise: PHI
target: B PHI
1. PHI ; hyp
2. []PHI ; nec_box 1
3. []PHI -> B PHI ; ax NB
4. B PHI ; mp 2 3

id: RM_B_cond
logic: L
premise: PHI -> PSI
target: B(CHI > PHI) -> B(CHI > PSI)
1. PHI -> PSI ; hyp
2. (CHI > PHI) -> (CHI > PSI) ; rm_cond 1 CHI
3. B(CHI > PHI) -> B(CHI > PSI) ; rm_b 2

# Belief distributes over a shared conditional antecedent.
id: lemma_C_B_cond
logic: L
target: B(CHI > PHI) & B(CHI > PSI) -> B(CHI > (PHI & PSI))
1. B(CHI > PHI) & B(CHI > PSI) -> B((CHI > PHI) & (CHI > PSI)) ; ax C_B
2. (CHI > PHI) & (CHI > PSI) -> (CHI > (PHI & PSI)) ; ax C_cond
3. B((CHI > PHI) & (CHI > PSI)) -> B(CHI > (PHI & PSI)) ; rm_b 2
4. B(CHI > PHI) & B(CHI > PSI) -> B(CHI > (PHI & PSI)) ; pl 1,3
";

const PRESERVATION: &str = "\
id: A_diamond_2
logic: AGM
target: B PHI -> (B PSI <-> B(PHI > PSI))
1. B PHI -> ~B~PHI ; ax D_B
2. PSI -> (PHI -> PSI) ; taut
3. B PSI -> B(PHI -> PSI) ; rm_b 2
4. B PHI & B PSI -> ~B~PHI & B(PHI -> PSI) ; pl 1,3
5. ~B~PHI & B(PHI -> PSI) -> B(PHI > PSI) ; ax A_star_4
6. B PHI & B PSI -> B(PHI > PSI) ; pl 4,5
7. B PHI -> (B PSI -> B(PHI > PSI)) ; pl 6
8. []~PHI -> B~PHI ; ax NB
9. ~B~PHI -> ~[]~PHI ; pl 8
10. B PHI -> ~[]~PHI ; pl 1,9
11. B PHI & B(PHI > PSI) -> ~[]~PHI & B(PHI > PSI) ; pl 10
12. ~[]~PHI & B(PHI > PSI) -> B(PHI -> PSI) ; ax A_star_3
13. B PHI & B(PHI > PSI) -> B(PHI -> PSI) ; pl 11,12
14. B PHI & B(PHI > PSI) -> B PHI & B(PHI -> PSI) ; pl 13
15. B PHI & B(PHI -> PSI) -> B(PHI & (PHI -> PSI)) ; ax C_B [phi=PHI, psi=PHI -> PSI]
16. PHI & (PHI -> PSI) -> PSI ; taut
17. B(PHI & (PHI -> PSI)) -> B PSI ; rm_b 16
18. B PHI & B(PHI > PSI) -> B PSI ; pl 14,15,17
19. B PHI -> (B PSI <-> B(PHI > PSI)) ; pl 7,18
";

const FWD: &str = "\
1. ~[]~(PHI & PSI) -> ~[]~PHI ; ax C_not_box_not
2. ~[]~(PHI & PSI) & B(PHI > PSI) -> ~[]~PHI & B(PHI > PSI) ; pl 1
3. ~[]~PHI & B(PHI > PSI) -> ~B(PHI > ~PSI) ; ax A_star5b_diamond_3b
4. ~[]~(PHI & PSI) & B(PHI > PSI) -> ~B(PHI > ~PSI) ; pl 2,3
5. CHI -> (PSI -> CHI) ; taut
6. B(PHI > CHI) -> B(PHI > (PSI -> CHI)) ; rule RM_B_cond 5
7. ~[]~(PHI & PSI) & B(PHI > PSI) & B(PHI > CHI) -> ~B(PHI > ~PSI) & B(PHI > (PSI -> CHI)) ; pl 4,6
8. ~B(PHI > ~PSI) & B(PHI > (PSI -> CHI)) -> B((PHI & PSI) > (PSI & CHI)) ; ax A_star8_diamond_9s
9. ~[]~(PHI & PSI) & B(PHI > PSI) & B(PHI > CHI) -> B((PHI & PSI) > (PSI & CHI)) ; pl 7,8
10. PSI & CHI -> CHI ; taut
11. B((PHI & PSI) > (PSI & CHI)) -> B((PHI & PSI) > CHI) ; rule RM_B_cond 10
12. ~[]~(PHI & PSI) & B(PHI > PSI) & B(PHI > CHI) -> B((PHI & PSI) > CHI) ; pl 9,11
13. ~[]~(PHI & PSI) & B(PHI > PSI) -> (B(PHI > CHI) -> B((PHI & PSI) > CHI)) ; pl 12
";

const BWD: [&str; 5] = [
    "~[]~(PHI & PSI) & B((PHI & PSI) > CHI) -> B(PHI > (PSI -> CHI)) ; ax A_star7_diamond_5",
    "~[]~(PHI & PSI) & B((PHI & PSI) > CHI) & B(PHI > PSI) -> B(PHI > PSI) & B(PHI > (PSI -> CHI)) ; pl {0}",
    "B(PHI > PSI) & B(PHI > (PSI -> CHI)) -> B(PHI > CHI) ; ax A_star1_diamond_0",
    "~[]~(PHI & PSI) & B(PHI > PSI) & B((PHI & PSI) > CHI) -> B(PHI > CHI) ; pl {1},{2}",
    "~[]~(PHI & PSI) & B(PHI > PSI) -> (B((PHI & PSI) > CHI) -> B(PHI > CHI)) ; pl {3}",
];

/// Steps of the backward half, numbered from `first`.
fn bwd_lines(first: u32) -> String {
    BWD.iter()
        .enumerate()
        .map(|(i, step)| {
            let mut s = step.to_string();
            for k in 0..4 {
                s = s.replace(&format!("{{{k}}}"), &(first + k as u32).to_string());
            }
            format!("{}. {s}\n", first + i as u32)
        })
        .collect()
}

/// Moves a lemma about `PSI & PHI` over to `PHI & PSI`.
fn swap_script(id: &str, lemma: &str, cited: &str, target: &str) -> String {
    format!(
        "id: {id}
logic: AGM
target: {target}
1. {cited} ; lemma {lemma} [phi=PSI, psi=PHI]
2. (PSI & PHI) <-> (PHI & PSI) ; taut
3. B((PSI & PHI) > CHI) <-> B((PHI & PSI) > CHI) ; rule R_star6_diamond_4 2
4. PHI & PSI -> PSI & PHI ; taut
5. ~[]~(PHI & PSI) -> ~[]~(PSI & PHI) ; rule RM_not_box_not 4
6. {target} ; pl 1,3,5
"
    )
}

fn equivalence_text() -> String {
    let fwd_target = "~[]~(PHI & PSI) & B(PHI > PSI) -> (B(PHI > CHI) -> B((PHI & PSI) > CHI))";
    let bwd_target = "~[]~(PHI & PSI) & B(PHI > PSI) -> (B((PHI & PSI) > CHI) -> B(PHI > CHI))";
    let fwd_swap = "~[]~(PHI & PSI) & B(PSI > PHI) -> (B(PSI > CHI) -> B((PHI & PSI) > CHI))";
    let bwd_swap = "~[]~(PHI & PSI) & B(PSI > PHI) -> (B((PHI & PSI) > CHI) -> B(PSI > CHI))";
    let mut text = String::new();
    text += &format!("id: A_diamond_6w_fwd\nlogic: AGM\ntarget: {fwd_target}\n{FWD}\n");
    text += &format!(
        "id: A_diamond_6w_bwd\nlogic: AGM\ntarget: {bwd_target}\n{}\n",
        bwd_lines(1)
    );
    text += &swap_script(
        "A_diamond_6w_fwd_swap",
        "A_diamond_6w_fwd",
        "~[]~(PSI & PHI) & B(PSI > PHI) -> (B(PSI > CHI) -> B((PSI & PHI) > CHI))",
        fwd_swap,
    );
    text += "\n";
    text += &swap_script(
        "A_diamond_6w_bwd_swap",
        "A_diamond_6w_bwd",
        "~[]~(PSI & PHI) & B(PSI > PHI) -> (B((PSI & PHI) > CHI) -> B(PSI > CHI))",
        bwd_swap,
    );
    text += &format!(
        "
id: A_diamond_6w
logic: AGM
target: ~[]~(PHI & PSI) & B(PHI > PSI) & B(PSI > PHI) -> (B(PHI > CHI) <-> B(PSI > CHI))
{FWD}14. {fwd_swap} ; lemma A_diamond_6w_fwd_swap
{}20. {bwd_swap} ; lemma A_diamond_6w_bwd_swap
21. ~[]~(PHI & PSI) & B(PHI > PSI) -> (B((PHI & PSI) > CHI) <-> B(PHI > CHI)) ; pl 13,19
22. ~[]~(PHI & PSI) & B(PSI > PHI) -> (B((PHI & PSI) > CHI) <-> B(PSI > CHI)) ; pl 14,20
23. ~[]~(PHI & PSI) & B(PHI > PSI) & B(PSI > PHI) -> (B((PHI & PSI) > CHI) <-> B(PHI > CHI)) & (B((PHI & PSI) > CHI) <-> B(PSI > CHI)) ; pl 21,22
24. (B((PHI & PSI) > CHI) <-> B(PHI > CHI)) & (B((PHI & PSI) > CHI) <-> B(PSI > CHI)) -> (B(PHI > CHI) <-> B(PSI > CHI)) ; taut
25. ~[]~(PHI & PSI) & B(PHI > PSI) & B(PSI > PHI) -> (B(PHI > CHI) <-> B(PSI > CHI)) ; pl 23,24
",
        bwd_lines(15)
    );
    text
}

const DISJUNCTION: &str = "\
id: A_diamond_7s_right
logic: AGM
target: ~[]~PSI & B(PSI > CHI) -> B((PHI | PSI) > (PSI -> CHI))
1. PSI <-> (PHI | PSI) & PSI ; taut
2. B(PSI > CHI) <-> B(((PHI | PSI) & PSI) > CHI) ; rule R_star6_diamond_4 1
3. B(PSI > CHI) -> B(((PHI | PSI) & PSI) > CHI) ; pl 2
4. PSI -> (PHI | PSI) & PSI ; taut
5. ~[]~PSI -> ~[]~((PHI | PSI) & PSI) ; rule RM_not_box_not 4
6. ~[]~PSI & B(PSI > CHI) -> ~[]~((PHI | PSI) & PSI) & B(((PHI | PSI) & PSI) > CHI) ; pl 3,5
7. ~[]~((PHI | PSI) & PSI) & B(((PHI | PSI) & PSI) > CHI) -> B((PHI | PSI) > (PSI -> CHI)) ; ax A_star7_diamond_5
8. ~[]~PSI & B(PSI > CHI) -> B((PHI | PSI) > (PSI -> CHI)) ; pl 6,7

id: A_diamond_7s
logic: AGM
target: ~[]~PHI & ~[]~PSI & B(PHI > CHI) & B(PSI > CHI) -> B((PHI | PSI) > CHI)
1. PHI <-> (PHI | PSI) & PHI ; taut
2. B(PHI > CHI) <-> B(((PHI | PSI) & PHI) > CHI) ; rule R_star6_diamond_4 1
3. B(PHI > CHI) -> B(((PHI | PSI) & PHI) > CHI) ; pl 2
4. PHI -> (PHI | PSI) & PHI ; taut
5. ~[]~PHI -> ~[]~((PHI | PSI) & PHI) ; rule RM_not_box_not 4
6. ~[]~PHI & B(PHI > CHI) -> ~[]~((PHI | PSI) & PHI) & B(((PHI | PSI) & PHI) > CHI) ; pl 3,5
7. ~[]~((PHI | PSI) & PHI) & B(((PHI | PSI) & PHI) > CHI) -> B((PHI | PSI) > (PHI -> CHI)) ; ax A_star7_diamond_5 [phi=PHI | PSI, psi=PHI, chi=CHI]
8. ~[]~PHI & B(PHI > CHI) -> B((PHI | PSI) > (PHI -> CHI)) ; pl 6,7
9. ~[]~PSI & B(PSI > CHI) -> B((PHI | PSI) > (PSI -> CHI)) ; lemma A_diamond_7s_right
10. ~[]~PHI & B(PHI > CHI) & ~[]~PSI & B(PSI > CHI) -> B((PHI | PSI) > (PHI -> CHI)) & B((PHI | PSI) > (PSI -> CHI)) ; pl 8,9
11. B((PHI | PSI) > (PHI -> CHI)) & B((PHI | PSI) > (PSI -> CHI)) -> B((PHI | PSI) > ((PHI -> CHI) & (PSI -> CHI))) ; lemma lemma_C_B_cond
12. (PHI -> CHI) & (PSI -> CHI) -> ((PHI | PSI) -> CHI) ; taut
13. B((PHI | PSI) > ((PHI -> CHI) & (PSI -> CHI))) -> B((PHI | PSI) > ((PHI | PSI) -> CHI)) ; rule RM_B_cond 12
14. ~[]~PHI & B(PHI > CHI) & ~[]~PSI & B(PSI > CHI) -> B((PHI | PSI) > ((PHI | PSI) -> CHI)) ; pl 10,11,13
15. B((PHI | PSI) > (PHI | PSI)) ; ax A_star2_diamond_1
16. B((PHI | PSI) > ((PHI | PSI) -> CHI)) -> B((PHI | PSI) > (PHI | PSI)) & B((PHI | PSI) > ((PHI | PSI) -> CHI)) ; pl 15
17. B((PHI | PSI) > (PHI | PSI)) & B((PHI | PSI) > ((PHI | PSI) -> CHI)) -> B((PHI | PSI) > CHI) ; ax A_star1_diamond_0
18. B((PHI | PSI) > ((PHI | PSI) -> CHI)) -> B((PHI | PSI) > CHI) ; pl 16,17
19. ~[]~PHI & ~[]~PSI & B(PHI > CHI) & B(PSI > CHI) -> B((PHI | PSI) > CHI) ; pl 14,18
";

const SUCCESS_IN_UPDATE: &str = "\
id: A_star_3_antecedent
logic: KM
target: B(PHI > PSI) -> B(((PHI | ~PHI) & PHI) > PSI)
1. PHI <-> (PHI | ~PHI) & PHI ; taut
2. B(PHI > PSI) <-> B(((PHI | ~PHI) & PHI) > PSI) ; rule R_star6_diamond_4 1
3. B(PHI > PSI) -> B(((PHI | ~PHI) & PHI) > PSI) ; pl 2

id: A_star_3
logic: KM
target: ~[]~PHI & B(PHI > PSI) -> B(PHI -> PSI)
1. B(PHI | ~PHI) -> (B(PHI -> PSI) <-> B((PHI | ~PHI) > (PHI -> PSI))) ; ax A_diamond_2 [phi=PHI | ~PHI, psi=PHI -> PSI]
2. PHI | ~PHI ; taut
3. B(PHI | ~PHI) ; rule N_B 2
4. B(PHI -> PSI) <-> B((PHI | ~PHI) > (PHI -> PSI)) ; mp 3 1
5. ~[]~((PHI | ~PHI) & PHI) & B(((PHI | ~PHI) & PHI) > PSI) -> B((PHI | ~PHI) > (PHI -> PSI)) ; ax A_star7_diamond_5 [phi=PHI | ~PHI, psi=PHI, chi=PSI]
6. PHI -> (PHI | ~PHI) & PHI ; taut
7. ~[]~PHI -> ~[]~((PHI | ~PHI) & PHI) ; rule RM_not_box_not 6
8. B(PHI > PSI) -> B(((PHI | ~PHI) & PHI) > PSI) ; lemma A_star_3_antecedent
9. ~[]~PHI & B(PHI > PSI) -> ~[]~((PHI | ~PHI) & PHI) & B(((PHI | ~PHI) & PHI) > PSI) ; pl 7,8
10. ~[]~PHI & B(PHI > PSI) -> B((PHI | ~PHI) > (PHI -> PSI)) ; pl 9,5
11. ~[]~PHI & B(PHI > PSI) -> B(PHI -> PSI) ; pl 10,4
";

/// Every shipped derivation, helpers included, in dependency order.
pub fn builtin_scripts() -> &'static [ProofScript] {
    static SCRIPTS: OnceLock<Vec<ProofScript>> = OnceLock::new();
    SCRIPTS.get_or_init(|| {
        let text = [
            BASE.to_string(),
            PRESERVATION.to_string(),
            equivalence_text(),
            DISJUNCTION.to_string(),
            SUCCESS_IN_UPDATE.to_string(),
        ]
        .join("\n");
        parse_scripts(&text).expect("builtin scripts parse")
    })
}

pub fn builtin_registry() -> Registry {
    let mut r = Registry::new();
    for s in builtin_scripts() {
        r.insert(s.clone());
    }
    r
}
