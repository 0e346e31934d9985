//! Tile definitions and catalogs.
//!
//! Endpoints of a tile are numbered globally, side by side in the order
//! bottom, right, top, left (south, east, north, west for squares). Within a
//! horizontal side they run left to right. A strand joins an entry endpoint
//! to an exit endpoint.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::geometry::Orientation;
use crate::bpd::BpdTile;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideSpec {
    pub endpoints: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub orientation: Orientation,
    pub sides: [SideSpec; 4],
    /// Strands as `[entry, exit]` endpoint pairs.
    pub matching: Vec<[usize; 2]>,
    /// Pairs of strand indices that cross. Computed at load when absent.
    #[serde(default)]
    pub crossings: Vec<[usize; 2]>,
    #[serde(default)]
    pub valued: bool,
}

/// Endpoint location inside a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub side: usize,
    pub pos: usize,
}

impl TileDef {
    pub fn counts(&self) -> [u8; 4] {
        self.sides.map(|s| s.endpoints)
    }

    pub fn num_endpoints(&self) -> usize {
        self.counts().iter().map(|&c| c as usize).sum()
    }

    pub fn port(&self, endpoint: usize) -> Option<Port> {
        let mut rest = endpoint;
        for (side, &c) in self.counts().iter().enumerate() {
            if rest < c as usize {
                return Some(Port { side, pos: rest });
            }
            rest -= c as usize;
        }
        None
    }

    pub fn endpoint(&self, p: Port) -> usize {
        self.counts()[..p.side]
            .iter()
            .map(|&c| c as usize)
            .sum::<usize>()
            + p.pos
    }

    /// Position of an endpoint when walking the boundary counter-clockwise.
    fn cyclic_position(&self, endpoint: usize) -> usize {
        let p = self.port(endpoint).expect("endpoint in range");
        let counts = self.counts();
        let before: usize = counts[..p.side].iter().map(|&c| c as usize).sum();
        let reversed = self.orientation.side_is_horizontal(p.side) && p.side == 2;
        before
            + if reversed {
                counts[p.side] as usize - 1 - p.pos
            } else {
                p.pos
            }
    }

    /// Strand pairs whose chords interleave on the boundary.
    pub fn computed_crossings(&self) -> BTreeSet<[usize; 2]> {
        let chords: Vec<(usize, usize)> = self
            .matching
            .iter()
            .map(|&[a, b]| {
                let (pa, pb) = (self.cyclic_position(a), self.cyclic_position(b));
                (pa.min(pb), pa.max(pb))
            })
            .collect();
        let mut out = BTreeSet::new();
        for s in 0..chords.len() {
            for t in s + 1..chords.len() {
                let (a, b) = chords[s];
                let inside = |x: usize| a < x && x < b;
                if inside(chords[t].0) != inside(chords[t].1) {
                    out.insert([s, t]);
                }
            }
        }
        out
    }

    /// Strands as port pairs.
    pub fn strands(&self) -> Vec<(Port, Port)> {
        self.matching
            .iter()
            .map(|&[a, b]| (self.port(a).unwrap(), self.port(b).unwrap()))
            .collect()
    }

    /// A single strand running straight from bottom to top.
    pub fn is_trivial(&self) -> bool {
        self.orientation != Orientation::Square && self.counts() == [1, 0, 1, 0]
    }

    /// One endpoint on every side.
    pub fn is_regular(&self) -> bool {
        self.counts() == [1, 1, 1, 1]
    }

    pub fn is_crossing(&self) -> bool {
        self.is_regular() && !self.crossings.is_empty()
    }

    /// The bumpless tile this square tile corresponds to.
    pub fn as_bpd_tile(&self) -> Option<BpdTile> {
        if self.orientation != Orientation::Square {
            return None;
        }
        let [s, e, n, w] = self.counts().map(|c| c > 0);
        let tile = BpdTile::from_sides([n, e, s, w])?;
        // elbows and straights are determined by their sides; a full square
        // must be the crossing, not a pair of touching elbows
        if tile == BpdTile::Cross && self.crossings.is_empty() {
            return None;
        }
        Some(tile)
    }

    fn check(&mut self) -> std::result::Result<(), String> {
        let o = self.orientation;
        let counts = self.counts();
        for (s, &c) in counts.iter().enumerate() {
            if c > o.side_capacity(s) {
                return Err(format!("{} side carries {c} endpoints", o.side_names()[s]));
            }
        }
        let entries = o.entries();
        let flow = |want: bool| -> usize {
            (0..4)
                .filter(|&s| entries[s] == want)
                .map(|s| counts[s] as usize)
                .sum()
        };
        if flow(true) != flow(false) {
            return Err(format!(
                "{} pipes enter but {} leave",
                flow(true),
                flow(false)
            ));
        }
        let total = self.num_endpoints();
        let mut used = vec![false; total];
        for pair in &mut self.matching {
            for &e in pair.iter() {
                if e >= total {
                    return Err(format!("endpoint {e} out of range"));
                }
                if std::mem::replace(&mut used[e], true) {
                    return Err(format!("endpoint {e} matched twice"));
                }
            }
        }
        if used.iter().any(|u| !u) {
            return Err("unmatched endpoint".into());
        }
        let is_entry = |t: &TileDef, e: usize| entries[t.port(e).unwrap().side];
        for k in 0..self.matching.len() {
            let [a, b] = self.matching[k];
            match (is_entry(self, a), is_entry(self, b)) {
                (true, false) => {}
                (false, true) => self.matching[k] = [b, a],
                _ => {
                    return Err(format!(
                        "strand {a}-{b} does not run from an entry to an exit"
                    ))
                }
            }
        }
        let computed = self.computed_crossings();
        if self.crossings.is_empty() {
            self.crossings = computed.into_iter().collect();
        } else {
            let given: BTreeSet<[usize; 2]> = self
                .crossings
                .iter()
                .map(|&[a, b]| [a.min(b), a.max(b)])
                .collect();
            if given != computed {
                return Err(format!(
                    "crossings {given:?} disagree with the geometry {computed:?}"
                ));
            }
            self.crossings = given.into_iter().collect();
        }
        Ok(())
    }

    fn key(&self) -> (Orientation, [u8; 4], BTreeSet<[usize; 2]>) {
        (
            self.orientation,
            self.counts(),
            self.matching.iter().copied().collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileCatalog {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Requirements this catalog is known to meet, see [`Requirement`].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub passes: Vec<String>,
    pub tiles: Vec<TileDef>,
}

/// Parse and validate a catalog document.
pub fn load_catalog(document: &str) -> Result<TileCatalog> {
    let cat: TileCatalog = serde_json::from_str(document).map_err(|e| Error::Catalog {
        tile: None,
        msg: e.to_string(),
    })?;
    TileCatalog::new(cat.name, cat.passes, cat.tiles)
}

impl TileCatalog {
    pub fn new(name: Option<String>, passes: Vec<String>, mut tiles: Vec<TileDef>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (k, t) in tiles.iter_mut().enumerate() {
            t.check()
                .map_err(|msg| Error::Catalog { tile: Some(k), msg })?;
            if !seen.insert(t.key()) {
                return Err(Error::Catalog {
                    tile: Some(k),
                    msg: "duplicate tile".into(),
                });
            }
        }
        Ok(Self {
            name,
            passes,
            tiles,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn of(&self, o: Orientation) -> impl Iterator<Item = (usize, &TileDef)> {
        self.tiles
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.orientation == o)
    }

    /// Tiles of one orientation only.
    pub fn restricted(&self, o: Orientation) -> TileCatalog {
        TileCatalog {
            name: self.name.clone(),
            passes: vec![],
            tiles: self.of(o).map(|(_, t)| t.clone()).collect(),
        }
    }

    pub fn bpd() -> TileCatalog {
        load_catalog(BPD_JSON).expect("shipped catalog is valid")
    }

    pub fn pd() -> TileCatalog {
        load_catalog(PD_JSON).expect("shipped catalog is valid")
    }

    /// The full reconstruction used for the exchange relation.
    pub fn full() -> TileCatalog {
        load_catalog(FULL_JSON).expect("shipped catalog is valid")
    }

    pub fn alternative() -> TileCatalog {
        load_catalog(ALT_JSON).expect("shipped catalog is valid")
    }

    pub fn builtin(name: &str) -> Option<TileCatalog> {
        match name {
            "bpd" => Some(Self::bpd()),
            "pd" => Some(Self::pd()),
            "full" => Some(Self::full()),
            "alt" => Some(Self::alternative()),
            _ => None,
        }
    }
}

pub const BPD_JSON: &str = include_str!("../../catalogs/bpd.json");
pub const PD_JSON: &str = include_str!("../../catalogs/pd.json");
pub const FULL_JSON: &str = include_str!("../../catalogs/full.json");
pub const ALT_JSON: &str = include_str!("../../catalogs/alt.json");

#[cfg(test)]
mod tests {
    use super::*;

    fn tile(o: Orientation, sides: [u8; 4], matching: Vec<[usize; 2]>) -> TileDef {
        TileDef {
            name: None,
            orientation: o,
            sides: sides.map(|endpoints| SideSpec { endpoints }),
            matching,
            crossings: vec![],
            valued: false,
        }
    }

    #[test]
    fn shipped_catalogs_load() {
        assert_eq!(TileCatalog::bpd().tiles.len(), 6);
        assert_eq!(TileCatalog::pd().tiles.len(), 2);
        assert!(TileCatalog::full().tiles.len() > 6);
        assert!(TileCatalog::alternative().tiles.len() > 6);
    }

    #[test]
    fn bpd_tiles_round_trip() {
        let cat = TileCatalog::bpd();
        let kinds: BTreeSet<BpdTile> = cat.tiles.iter().map(|t| t.as_bpd_tile().unwrap()).collect();
        assert_eq!(kinds.len(), 6);
        let blank = cat
            .tiles
            .iter()
            .find(|t| t.as_bpd_tile() == Some(BpdTile::Blank))
            .unwrap();
        assert!(blank.valued);
        assert_eq!(cat.tiles.iter().filter(|t| t.valued).count(), 1);
    }

    #[test]
    fn capacity() {
        let bad = tile(
            Orientation::LeanLeft,
            [3, 0, 3, 0],
            vec![[0, 3], [1, 4], [2, 5]],
        );
        let err = TileCatalog::new(None, vec![], vec![bad]).unwrap_err();
        assert!(matches!(err, Error::Catalog { tile: Some(0), .. }));
        let tilted = tile(Orientation::Square, [2, 2, 0, 0], vec![[0, 2], [1, 3]]);
        assert!(TileCatalog::new(None, vec![], vec![tilted]).is_err());
    }

    #[test]
    fn conservation() {
        let bad = tile(Orientation::LeanRight, [1, 1, 1, 0], vec![[0, 2]]);
        let err = TileCatalog::new(None, vec![], vec![bad])
            .unwrap_err()
            .to_string();
        assert!(err.contains("enter"), "{err}");
    }

    #[test]
    fn malformed_matching() {
        let twice = tile(Orientation::LeanRight, [1, 0, 1, 0], vec![[0, 1], [0, 1]]);
        assert!(TileCatalog::new(None, vec![], vec![twice]).is_err());
        // bottom and right are both entries
        let same = tile(Orientation::LeanRight, [1, 1, 1, 1], vec![[0, 1], [2, 3]]);
        assert!(TileCatalog::new(None, vec![], vec![same]).is_err());
        let dup = tile(Orientation::LeanRight, [1, 0, 1, 0], vec![[0, 1]]);
        assert!(TileCatalog::new(None, vec![], vec![dup.clone(), dup]).is_err());
    }

    #[test]
    fn reversed_pairs_are_normalized() {
        let t = tile(Orientation::LeanRight, [1, 0, 1, 0], vec![[1, 0]]);
        let cat = TileCatalog::new(None, vec![], vec![t]).unwrap();
        assert_eq!(cat.tiles[0].matching, vec![[0, 1]]);
    }

    #[test]
    fn crossing_geometry() {
        // lean-left: bottom->top and left->right cross, bottom->right and
        // left->top do not
        let x = tile(Orientation::LeanLeft, [1, 1, 1, 1], vec![[0, 2], [3, 1]]);
        let b = tile(Orientation::LeanLeft, [1, 1, 1, 1], vec![[0, 1], [3, 2]]);
        let cat = TileCatalog::new(None, vec![], vec![x, b]).unwrap();
        assert_eq!(cat.tiles[0].crossings, vec![[0, 1]]);
        assert!(cat.tiles[1].crossings.is_empty());
        // two pipes through a horizontal pair, swapped on the way up
        let swap = tile(Orientation::LeanLeft, [2, 0, 2, 0], vec![[0, 3], [1, 2]]);
        let keep = tile(Orientation::LeanLeft, [2, 0, 2, 0], vec![[0, 2], [1, 3]]);
        let cat = TileCatalog::new(None, vec![], vec![swap, keep]).unwrap();
        assert_eq!(cat.tiles[0].crossings, vec![[0, 1]]);
        assert!(cat.tiles[1].crossings.is_empty());
    }

    #[test]
    fn given_crossings_must_match() {
        let mut t = tile(Orientation::LeanLeft, [1, 1, 1, 1], vec![[0, 1], [3, 2]]);
        t.crossings = vec![[0, 1]];
        assert!(TileCatalog::new(None, vec![], vec![t]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cat = TileCatalog::full();
        assert_eq!(load_catalog(&cat.to_json()).unwrap(), cat);
    }
}
