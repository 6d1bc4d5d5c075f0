use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::FaceCycleCert;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Surface {
    Cylinder,
    Moebius,
}

impl Surface {
    /// The class a 3-partite cycle of this length must have.
    pub fn by_parity(len: usize) -> Surface {
        if len % 2 == 0 {
            Surface::Cylinder
        } else {
            Surface::Moebius
        }
    }
}

fn dedup_triangles(edges: &[Vec<usize>]) -> Result<Vec<[usize; 3]>> {
    let mut set = BTreeSet::new();
    for e in edges {
        let mut e = e.clone();
        e.sort_unstable();
        e.dedup();
        if e.len() != 3 {
            return Err(Error::Unsupported(format!("expected triangles, got {e:?}")));
        }
        set.insert([e[0], e[1], e[2]]);
    }
    Ok(set.into_iter().collect())
}

/// e − p + v of the 2-complex spanned by a set of triangles.
pub fn euler_characteristic(r: usize, edges: &[Vec<usize>]) -> Result<i64> {
    if r != 3 {
        return Err(Error::Unsupported(format!("Euler characteristic is implemented for r = 3, got {r}")));
    }
    let tris = dedup_triangles(edges)?;
    let mut sides = BTreeSet::new();
    let mut verts = BTreeSet::new();
    for t in &tris {
        sides.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
        verts.extend(t.iter().copied());
    }
    Ok(tris.len() as i64 - sides.len() as i64 + verts.len() as i64)
}

/// Direction triangle `t` with orientation `sign` induces on its side {a, b}.
fn induced(t: &[usize; 3], sign: i8, a: usize, b: usize) -> i8 {
    // Sorted (x, y, z) with sign +1 runs x→y→z→x.
    let forward = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])];
    let d = if forward.contains(&(a, b)) { 1 } else { -1 };
    d * sign
}

/// Cylinder or Möbius strip, by propagating a triangle orientation across
/// shared sides; a forced conflict means non-orientable.
///
/// Errors unless r = 3, the complex has Euler characteristic 0, and every
/// side lies in at most two triangles.
pub fn classify_surface(c: &FaceCycleCert) -> Result<Surface> {
    let r = c.walk.r();
    if r != 3 {
        return Err(Error::Unsupported(format!("surface classification is implemented for r = 3, got {r}")));
    }
    let edges = c.walk.edges();
    let chi = euler_characteristic(3, &edges)?;
    if chi != 0 {
        return Err(Error::Invalid(format!("complex has Euler characteristic {chi}, not a cylinder or Möbius strip")));
    }
    let tris = dedup_triangles(&edges)?;
    let mut by_side: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for s in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            by_side.entry(s).or_default().push(i);
        }
    }
    if let Some((s, ts)) = by_side.iter().find(|(_, ts)| ts.len() >= 3) {
        return Err(Error::Invalid(format!("side {s:?} lies in {} triangles", ts.len())));
    }
    let mut sign = vec![0i8; tris.len()];
    let mut conflict = false;
    for root in 0..tris.len() {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let t = &tris[i];
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                for &j in &by_side[&(a, b)] {
                    if j == i {
                        continue;
                    }
                    // Consistent neighbours traverse the shared side in opposite directions.
                    let want = -induced(t, sign[i], a, b);
                    let sj = if induced(&tris[j], 1, a, b) == want { 1 } else { -1 };
                    if sign[j] == 0 {
                        sign[j] = sj;
                        queue.push_back(j);
                    } else if sign[j] != sj {
                        conflict = true;
                    }
                }
            }
        }
    }
    Ok(if conflict { Surface::Moebius } else { Surface::Cylinder })
}

/// A partition of the vertices of a 3-graph into three classes meeting every
/// edge once each, found by exhaustive search.
pub fn is_three_partite(edges: &[Vec<usize>]) -> Option<[Vec<usize>; 3]> {
    let verts: Vec<usize> = edges.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for (ei, e) in edges.iter().enumerate() {
        if e.len() != 3 {
            return None;
        }
        for v in e {
            incident[index[v]].push(ei);
        }
    }
    let mut class = vec![u8::MAX; verts.len()];

    fn fits(edges: &[Vec<usize>], index: &BTreeMap<usize, usize>, class: &[u8], inc: &[usize]) -> bool {
        inc.iter().all(|&e| {
            let cs: Vec<u8> = edges[e].iter().map(|v| class[index[v]]).filter(|&c| c != u8::MAX).collect();
            (0..cs.len()).all(|i| (i + 1..cs.len()).all(|j| cs[i] != cs[j]))
        })
    }

    fn go(
        k: usize,
        edges: &[Vec<usize>],
        index: &BTreeMap<usize, usize>,
        incident: &[Vec<usize>],
        class: &mut Vec<u8>,
    ) -> bool {
        if k == class.len() {
            return true;
        }
        // Symmetry: the first vertex goes to class 0.
        let top = if k == 0 { 1 } else { 3 };
        for c in 0..top {
            class[k] = c;
            if fits(edges, index, class, &incident[k]) && go(k + 1, edges, index, incident, class) {
                return true;
            }
        }
        class[k] = u8::MAX;
        false
    }

    if !go(0, edges, &index, &incident, &mut class) {
        return None;
    }
    let mut parts: [Vec<usize>; 3] = Default::default();
    for (i, &v) in verts.iter().enumerate() {
        parts[class[i] as usize].push(v);
    }
    Some(parts)
}
