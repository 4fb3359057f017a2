/// A partition as weakly decreasing positive parts.
pub type Partition = Vec<u32>;

/// All partitions of n in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Partition, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// All partitions of every size up to and including `cap`, by size.
pub fn partitions_up_to(cap: u32) -> Vec<Partition> {
    (0..=cap).flat_map(partitions_of).collect()
}

/// Number of distinct part sizes.
pub fn distinct_sizes(p: &[u32]) -> u32 {
    if p.is_empty() {
        0
    } else {
        1 + p.windows(2).filter(|w| w[0] > w[1]).count() as u32
    }
}

pub fn conjugate(p: &[u32]) -> Partition {
    let width = p.first().copied().unwrap_or(0);
    (1..=width).map(|k| p.iter().filter(|&&x| x >= k).count() as u32).collect()
}

/// p(n) for n in 0..=cap by Euler's recurrence-free counting.
pub fn partition_counts(cap: usize) -> Vec<u64> {
    let mut counts = vec![0u64; cap + 1];
    counts[0] = 1;
    for part in 1..=cap {
        for n in part..=cap {
            counts[n] += counts[n - part];
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partition_lists() {
        assert_eq!(partitions_of(0), vec![Vec::<u32>::new()]);
        assert_eq!(partitions_of(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions_of(7).len(), 15);
    }

    #[test]
    fn enumeration_agrees_with_counts() {
        let counts = partition_counts(15);
        for (n, &count) in counts.iter().enumerate() {
            assert_eq!(partitions_of(n as u32).len() as u64, count);
        }
    }

    #[test]
    fn distinct_size_examples() {
        assert_eq!(distinct_sizes(&[8, 6, 6, 2, 1, 1]), 4);
        assert_eq!(distinct_sizes(&[8, 6, 6, 3, 1, 1]), 4);
        assert_eq!(distinct_sizes(&[7]), 1);
        assert_eq!(distinct_sizes(&[]), 0);
    }

    #[test]
    fn conjugation_is_an_involution() {
        for n in 0..=10 {
            for p in partitions_of(n) {
                let c = conjugate(&p);
                assert_eq!(c.iter().sum::<u32>(), n);
                assert_eq!(conjugate(&c), p);
            }
        }
    }
}
