use serde::Serialize;

/// What a transition does. Particle sites are numbered r >= 1 for site -r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// The +1 spin at `plus` exchanges with the -1 spin at `minus`.
    Swap { plus: i64, minus: i64 },
    /// `count` particles leave site -origin for site -target. `index` is the
    /// position (from the side of the +1 spin at S_origin) of the -1 spin
    /// that swaps; `distance` is the displacement of that swap.
    Hop { origin: usize, target: usize, count: u32, index: u32, distance: u64 },
    /// Particles leave through the boundary past site -1.
    BoundaryOut { origin: usize, count: u32, index: u32, distance: u64 },
    /// Particles enter from the boundary and land at site -target.
    BoundaryIn { target: usize, count: u32, distance: u64 },
}

impl Move {
    pub fn distance(&self) -> u64 {
        match *self {
            Move::Swap { plus, minus } => plus.abs_diff(minus),
            Move::Hop { distance, .. } | Move::BoundaryOut { distance, .. } | Move::BoundaryIn { distance, .. } => {
                distance
            }
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Move::Swap { plus, minus } => format!("swap({plus},{minus})"),
            Move::Hop { origin, target, count, index, .. } => format!("hop(-{origin}->-{target},k={count},m={index})"),
            Move::BoundaryOut { origin, count, index, .. } => format!("out(-{origin},k={count},m={index})"),
            Move::BoundaryIn { target, count, .. } => format!("in(-{target},k={count})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionRecord<St, S> {
    pub source: St,
    pub target: St,
    pub rate: S,
    pub descriptor: Move,
}
