use crate::error::{Error, Result};
use crate::structure::{check_signatures, Assignment, Signature, Structure};

/// Names accepted by [`by_name`]; `cycle:<n>` is listed with `n = 4`.
pub const GALLERY_NAMES: [&str; 6] = ["asym-cut", "c4ref", "c6", "cycle:4", "hard-ptas", "no-rainbow"];

fn binary_signature() -> Signature {
    Signature::new([("R", 2)]).expect("static signature")
}

fn ternary_signature() -> Signature {
    Signature::new([("R", 3)]).expect("static signature")
}

fn all_tuples(size: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = size.pow(arity as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = code % size;
            code /= size;
        }
        t
    })
}

/// The directed cycle relation `{(x, y) : x - y mod n = ±1}` on `0..n`.
pub fn cycle(n: usize) -> Result<Structure> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {n} < 3")));
    }
    let tuples = all_tuples(n, 2)
        .filter(|t| {
            let d = (t[0] + n - t[1]) % n;
            d == 1 || d == n - 1
        })
        .collect();
    Structure::new(binary_signature(), n, vec![tuples])
}

/// `{(x, y) : x - y mod 4 ∈ {0, 1}}` on `0..4`.
pub fn reflexive_cycle4() -> Structure {
    let tuples = all_tuples(4, 2)
        .filter(|t| matches!((t[0] + 4 - t[1]) % 4, 0 | 1))
        .collect();
    Structure::new(binary_signature(), 4, vec![tuples]).expect("static template")
}

/// Ternary relation on `{0, 1, 2}` holding every tuple that is not all-distinct.
pub fn no_rainbow() -> Structure {
    let tuples = all_tuples(3, 3)
        .filter(|t| t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
        .collect();
    Structure::new(ternary_signature(), 3, vec![tuples]).expect("static template")
}

/// Boolean template with equality `eq` and disjunction `or`.
pub fn asymmetric_cut() -> Structure {
    let sig = Signature::new([("eq", 2), ("or", 2)]).expect("static signature");
    Structure::new(
        sig,
        2,
        vec![
            vec![vec![0, 0], vec![1, 1]],
            vec![vec![0, 1], vec![1, 0], vec![1, 1]],
        ],
    )
    .expect("static template")
}

/// Boolean ternary template that is 0-valid yet has an NP-hard surjective
/// decision problem.
pub fn hard_but_ptas() -> Structure {
    let tuples = vec![
        vec![0, 0, 0],
        vec![0, 1, 0],
        vec![0, 1, 1],
        vec![1, 0, 1],
        vec![1, 1, 0],
    ];
    Structure::new(ternary_signature(), 2, vec![tuples]).expect("static template")
}

/// Resolves a gallery name: `c6`, `cycle:<n>`, `c4ref`, `no-rainbow`,
/// `asym-cut`, `hard-ptas`.
pub fn by_name(name: &str) -> Result<Structure> {
    match name {
        "c6" => cycle(6),
        "c4ref" => Ok(reflexive_cycle4()),
        "no-rainbow" => Ok(no_rainbow()),
        "asym-cut" => Ok(asymmetric_cut()),
        "hard-ptas" => Ok(hard_but_ptas()),
        _ => match name.strip_prefix("cycle:") {
            Some(n) => {
                let n = n.parse().map_err(|_| {
                    Error::InvalidArgument(format!("bad cycle length in `{name}`"))
                })?;
                cycle(n)
            }
            None => Err(Error::InvalidArgument(format!(
                "unknown template `{name}` (expected one of c6, cycle:<n>, c4ref, no-rainbow, asym-cut, hard-ptas)"
            ))),
        },
    }
}

/// The demonstration instance shipped with each gallery problem: the
/// equality triangle for `asym-cut`, a single rainbow-prone triple for
/// `no-rainbow`, and the template itself for everything else.
pub fn gallery_instance(name: &str) -> Result<Structure> {
    let template = by_name(name)?;
    match name {
        "asym-cut" => Structure::new(
            template.signature().clone(),
            3,
            vec![vec![vec![0, 1], vec![0, 2], vec![1, 2]], vec![]],
        ),
        "no-rainbow" => Structure::new(template.signature().clone(), 3, vec![vec![vec![0, 1, 2]]]),
        _ => Ok(template),
    }
}

/// Decides whether an asymmetric-cut instance has a surjective homomorphism.
///
/// Components are the classes of the equality relation. A component with no
/// `or` tuple inside it can be sent to 0 and everything else to 1. The lowest
/// such component (by smallest element) is chosen; a component covering every
/// element does not qualify.
pub fn asym_cut_feasible(instance: &Structure) -> Result<Option<Assignment>> {
    let template = asymmetric_cut();
    check_signatures(instance, &template)?;
    let n = instance.size();
    if n < 2 {
        return Ok(None);
    }
    let eq = instance.relation("eq").expect("checked signature");
    let or = instance.relation("or").expect("checked signature");

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in eq {
        let (a, b) = (find(&mut parent, t[0]), find(&mut parent, t[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let root: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();

    let mut dirty = vec![false; n];
    for t in or {
        if root[t[0]] == root[t[1]] {
            dirty[root[t[0]]] = true;
        }
    }
    let mut component_size = vec![0usize; n];
    for &r in &root {
        component_size[r] += 1;
    }
    // Roots are the smallest member of their class, so scanning roots in
    // order visits components by their smallest element.
    let chosen = (0..n).find(|&r| root[r] == r && !dirty[r] && component_size[r] < n);
    Ok(chosen.map(|c| Assignment::new(root.iter().map(|&r| usize::from(r != c)).collect())))
}
