//! Built-in generator sets, stored in `.gens` syntax.

use super::{parse_gens, GensData, GroupError};

const SYM4: &str = "\
perm 4
(1 2)
(2 3)
(3 4)
seed (1 2)
";

const SYM5: &str = "\
perm 5
(1 2)
(2 3)
(3 4)
(4 5)
seed (1 2)
";

// 3^2:2, inversion acting on F_3^2
const AFF_3_2_2: &str = "\
affineperm 3 2
[0,0 | () | 2,2]
[1,0 | () | 2,2]
[0,1 | () | 2,2]
seed [0,0 | () | 2,2]
";

// 2^3:Sym(4) on the sum-zero part of F_2^4
const W_D4: &str = "\
affineperm 2 4 sumzero
[0,0,0,0 | (1 2)]
[0,0,0,0 | (2 3)]
[0,0,0,0 | (3 4)]
[1,1,0,0 | (1 2)]
seed [0,0,0,0 | (1 2)]
";

// 3^3:Sym(4) on the sum-zero part of F_3^4
const AFF_3_3_SYM4: &str = "\
affineperm 3 4 sumzero
[0,0,0,0 | (1 2)]
[0,0,0,0 | (2 3)]
[0,0,0,0 | (3 4)]
[1,2,0,0 | (1 2)]
seed [0,0,0,0 | (1 2)]
";

// 2^6:SU_3(2)': the involutions d, e, f and one translate of f
const SU32: &str = "\
affinemat-gf4 3
[0,0,0 | 1 0 0  1 1 0  1 0 1]
[0,0,0 | 1 1 0  0 1 0  0 w+1 1]
[0,0,0 | 1 0 1  0 1 w  0 0 1]
[0,0,w | 1 0 1  0 1 w  0 0 1]
seed [0,0,0 | 1 0 0  1 1 0  1 0 1]
";

/// Preset names with their `.gens` text.
pub const PRESETS: &[(&str, &str)] =
    &[("sym4", SYM4), ("sym5", SYM5), ("3_2_2", AFF_3_2_2), ("w_d4", W_D4), ("3_3_sym4", AFF_3_3_SYM4), ("su32", SU32)];

pub fn preset(name: &str) -> Result<GensData, GroupError> {
    let (_, text) =
        PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| GroupError::UnknownPreset(name.to_string()))?;
    parse_gens(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transposition::{GroupElement, DEFAULT_CLASS_CAP};

    #[test]
    fn class_sizes() {
        let expect = [("sym4", 6), ("sym5", 10), ("3_2_2", 9), ("w_d4", 12), ("3_3_sym4", 18), ("su32", 36)];
        for (name, n) in expect {
            assert_eq!(preset(name).unwrap().class_size(DEFAULT_CLASS_CAP).unwrap(), n, "{name}");
        }
        assert_eq!(preset("e6"), Err(GroupError::UnknownPreset("e6".into())));
    }

    #[test]
    fn su32_generators_are_involutions() {
        let GensData::MatGf4 { gens, .. } = preset("su32").unwrap() else { panic!("wrong model") };
        for g in &gens {
            assert!(!g.is_identity());
            assert!(g.compose(g).unwrap().is_identity());
            // the linear part alone squares to the identity as well
            assert_eq!(g.matrix() * g.matrix(), crate::gf::FieldMatrix::identity(3));
        }
    }
}
