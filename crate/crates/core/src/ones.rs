//! Consecutive- and circular-ones testing for families of sets.
//!
//! Rows sharing columns without nesting ("overlapping" rows) pin down each
//! other's relative order, so every connected component of the overlap
//! relation is arranged by refining an ordered partition of its columns. The
//! unions of different components are laminar, and a component nested in
//! another lands inside a single block of it, so the arrangements compose
//! top-down.

/// A column order in which every row is a contiguous run, if one exists.
pub fn consecutive_order(columns: usize, rows: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_unstable();
            r.dedup();
            r
        })
        .filter(|r| r.len() > 1 && r.len() < columns)
        .collect();
    sets.sort();
    sets.dedup();
    let member: Vec<Vec<bool>> = sets
        .iter()
        .map(|r| {
            let mut m = vec![false; columns];
            r.iter().for_each(|&c| m[c] = true);
            m
        })
        .collect();
    let overlap = |a: usize, b: usize| {
        let common = sets[a].iter().filter(|&&c| member[b][c]).count();
        common > 0 && common < sets[a].len() && common < sets[b].len()
    };

    // Components of the overlap relation, each listed in BFS order.
    let mut comp_of = vec![usize::MAX; sets.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..sets.len() {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp_of[start] = id;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let r = queue[head];
            head += 1;
            for o in 0..sets.len() {
                if comp_of[o] == usize::MAX && overlap(r, o) {
                    comp_of[o] = id;
                    queue.push(o);
                }
            }
        }
        comps.push(queue);
    }

    let mut arranged: Vec<Arranged> = Vec::with_capacity(comps.len() + 1);
    arranged.push(Arranged { union: vec![true; columns], size: columns, single: true, blocks: vec![(0..columns).collect()] });
    for comp in &comps {
        let blocks = arrange_component(columns, comp.iter().map(|&r| &sets[r]))?;
        let mut union = vec![false; columns];
        blocks.iter().flatten().for_each(|&c| union[c] = true);
        let size = blocks.iter().map(Vec::len).sum();
        arranged.push(Arranged { union, size, single: comp.len() == 1, blocks });
    }

    // Parents: the smallest strictly later-processed component containing the union.
    let mut idx: Vec<usize> = (0..arranged.len()).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(arranged[i].size), !arranged[i].single, i));
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); arranged.len()];
    for (pos, &c) in idx.iter().enumerate().skip(1) {
        let parent = idx[..pos]
            .iter()
            .rev()
            .copied()
            .find(|&p| (0..columns).all(|col| !arranged[c].union[col] || arranged[p].union[col]))
            .expect("the root contains everything");
        children[parent].push(c);
    }
    let mut order = Vec::with_capacity(columns);
    let mut placed = vec![false; columns];
    emit(&arranged, &children, 0, &mut order, &mut placed)?;
    debug_assert_eq!(order.len(), columns);
    rows.iter().all(|r| is_consecutive(&order, r)).then_some(order)
}

struct Arranged {
    union: Vec<bool>,
    size: usize,
    single: bool,
    blocks: Vec<Vec<usize>>,
}

fn emit(arr: &[Arranged], children: &[Vec<usize>], node: usize, order: &mut Vec<usize>, placed: &mut [bool]) -> Option<()> {
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); arr[node].blocks.len()];
    for &c in &children[node] {
        let first = arr[c].blocks.iter().flatten().next().copied()?;
        let home = arr[node].blocks.iter().position(|b| b.contains(&first))?;
        let fits = arr[c].blocks.iter().flatten().all(|col| arr[node].blocks[home].contains(col));
        if !fits {
            return None;
        }
        pending[home].push(c);
    }
    for (b, block) in arr[node].blocks.iter().enumerate() {
        for &c in &pending[b] {
            emit(arr, children, c, order, placed)?;
        }
        for &col in block {
            if !placed[col] {
                placed[col] = true;
                order.push(col);
            }
        }
    }
    Some(())
}

/// Ordered partition of the union of one overlap component.
fn arrange_component<'a>(columns: usize, rows: impl Iterator<Item = &'a Vec<usize>>) -> Option<Vec<Vec<usize>>> {
    let mut seq: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; columns];
    for row in rows {
        let mut inside = vec![false; columns];
        row.iter().for_each(|&c| inside[c] = true);
        let fresh: Vec<usize> = row.iter().copied().filter(|&c| !placed[c]).collect();
        if seq.is_empty() {
            seq.push(row.clone());
            row.iter().for_each(|&c| placed[c] = true);
            continue;
        }
        let touched: Vec<usize> = (0..seq.len()).filter(|&b| seq[b].iter().any(|&c| inside[c])).collect();
        let (i, j) = (*touched.first()?, *touched.last()?);
        if touched.len() != j - i + 1 {
            return None;
        }
        let full = |b: &Vec<usize>| b.iter().all(|&c| inside[c]);
        if (i + 1..j).any(|b| !full(&seq[b])) {
            return None;
        }
        let last = seq.len() - 1;
        // Which end, if any, the fresh columns grow from.
        let grow_right = if fresh.is_empty() {
            None
        } else if j == last && (i < j && full(&seq[j]) || i == j) {
            Some(true)
        } else if i == 0 && (i < j && full(&seq[i]) || i == j) {
            Some(false)
        } else {
            return None;
        };
        let split = |b: &Vec<usize>| -> (Vec<usize>, Vec<usize>) { b.iter().partition(|&&c| inside[c]) };
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(seq.len() + 3);
        next.extend(seq[..i].iter().cloned());
        if i == j {
            let (yes, no) = split(&seq[i]);
            match grow_right {
                Some(true) => next.extend([no, yes].into_iter().filter(|b| !b.is_empty())),
                Some(false) => next.extend([yes, no].into_iter().filter(|b| !b.is_empty())),
                None => return None,
            }
        } else {
            let (yes_i, no_i) = split(&seq[i]);
            let (yes_j, no_j) = split(&seq[j]);
            next.extend([no_i, yes_i].into_iter().filter(|b| !b.is_empty()));
            next.extend(seq[i + 1..j].iter().cloned());
            next.extend([yes_j, no_j].into_iter().filter(|b| !b.is_empty()));
        }
        next.extend(seq[j + 1..].iter().cloned());
        match grow_right {
            Some(true) => next.push(fresh.clone()),
            Some(false) => next.insert(0, fresh.clone()),
            None => {}
        }
        fresh.iter().for_each(|&c| placed[c] = true);
        seq = next;
    }
    Some(seq)
}

pub fn is_consecutive(order: &[usize], row: &[usize]) -> bool {
    let mut inside = vec![false; order.len()];
    row.iter().for_each(|&c| inside[c] = true);
    let runs = (0..order.len()).filter(|&i| inside[order[i]] && (i == 0 || !inside[order[i - 1]])).count();
    runs <= 1
}

pub fn is_circular_consecutive(order: &[usize], row: &[usize]) -> bool {
    let len = order.len();
    let mut inside = vec![false; len];
    row.iter().for_each(|&c| inside[c] = true);
    let starts = (0..len).filter(|&i| inside[order[i]] && !inside[order[(i + len - 1) % len]]).count();
    starts <= 1
}

/// A column order in which every row is circularly contiguous.
pub fn circular_order(columns: usize, rows: &[Vec<usize>]) -> Option<Vec<usize>> {
    if columns == 0 {
        return Some(Vec::new());
    }
    // Rows through column 0 are replaced by their complements.
    let flipped: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| if r.contains(&0) { (0..columns).filter(|c| !r.contains(c)).collect() } else { r.clone() })
        .collect();
    let order = consecutive_order(columns, &flipped)?;
    rows.iter().all(|r| is_circular_consecutive(&order, r)).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_overlaps() {
        let rows = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]];
        let o = consecutive_order(5, &rows).unwrap();
        assert!(rows.iter().all(|r| is_consecutive(&o, r)));
    }

    #[test]
    fn star_of_pairs_fails() {
        // Three pairs sharing column 0 cannot all be consecutive.
        assert!(consecutive_order(4, &[vec![0, 1], vec![0, 2], vec![0, 3]]).is_none());
    }

    #[test]
    fn nested_components() {
        let rows = vec![vec![0, 1, 2, 3], vec![3, 4, 5], vec![1, 2], vec![0, 1]];
        let o = consecutive_order(6, &rows).unwrap();
        assert!(rows.iter().all(|r| is_consecutive(&o, r)));
    }

    #[test]
    fn circular_cycle() {
        let rows: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        assert!(consecutive_order(5, &rows).is_none());
        let o = circular_order(5, &rows).unwrap();
        assert!(rows.iter().all(|r| is_circular_consecutive(&o, r)));
    }

    #[test]
    fn empty_and_trivial() {
        assert_eq!(consecutive_order(0, &[]), Some(vec![]));
        assert!(consecutive_order(3, &[vec![0, 1, 2], vec![1]]).is_some());
    }
}
