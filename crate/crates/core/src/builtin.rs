//! Example theories and proofs compiled into the library, addressed as
//! `builtin:<name>`.

/// `(name, theory source, proof source)`.
pub const BUILTINS: [(&str, &str, &str); 3] = [
    (
        "whitecrow",
        include_str!("../examples/whitecrow.thy"),
        include_str!("../examples/whitecrow_proof.lc"),
    ),
    (
        "pseudo",
        include_str!("../examples/pseudo.thy"),
        include_str!("../examples/pseudo_proof.lc"),
    ),
    (
        "pseudo-paper",
        include_str!("../examples/pseudo_paper.thy"),
        include_str!("../examples/pseudo_paper_proof.lc"),
    ),
];

pub const PREFIX: &str = "builtin:";

fn find(spec: &str) -> Option<&'static (&'static str, &'static str, &'static str)> {
    let name = spec.strip_prefix(PREFIX)?;
    BUILTINS.iter().find(|(n, _, _)| *n == name)
}

/// Whether `spec` uses the `builtin:` prefix at all.
pub fn is_builtin(spec: &str) -> bool {
    spec.starts_with(PREFIX)
}

pub fn theory(spec: &str) -> Option<&'static str> {
    find(spec).map(|b| b.1)
}

pub fn proof(spec: &str) -> Option<&'static str> {
    find(spec).map(|b| b.2)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|b| b.0)
}
