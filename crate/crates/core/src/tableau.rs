//! Catalan alternative tableaux.
//!
//! A shape is a `±1` word of length `m`. Every `+1` step is a row and every
//! `-1` step is a column, both indexed by their 1-based position in the word.
//! Row `r` and column `c` meet in a cell iff `r < c`.
//!
//! Dot rules:
//!
//! - a red dot at `(r, c)` rules out any other dot at `(r, c')` with `c' > c`
//!   and covers those cells;
//! - a blue dot at `(r, c)` rules out any other dot at `(r', c)` with `r' < r`
//!   and covers those cells;
//! - every cell holds a dot or is covered.
//!
//! Under these rules a tableau restricted to any contiguous block of steps is
//! again a valid tableau, and transposition is a symmetry.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::{Sign, SignWord};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape(SignWord);

impl Shape {
    pub fn new(word: SignWord) -> Self {
        Shape(word)
    }

    pub fn empty() -> Self {
        Shape(SignWord::empty())
    }

    pub fn word(&self) -> &SignWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign at 1-based position `p`.
    pub fn step(&self, p: usize) -> Option<Sign> {
        p.checked_sub(1).and_then(|i| self.0.signs().get(i).copied())
    }

    /// Positions of row steps (`+1`), increasing.
    pub fn rows(&self) -> Vec<usize> {
        self.positions(Sign::Up)
    }

    /// Positions of column steps (`-1`), increasing.
    pub fn cols(&self) -> Vec<usize> {
        self.positions(Sign::Down)
    }

    fn positions(&self, sign: Sign) -> Vec<usize> {
        self.0.signs().iter().enumerate().filter(|(_, &s)| s == sign).map(|(i, _)| i + 1).collect()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < cell.col && self.step(cell.row) == Some(Sign::Up) && self.step(cell.col) == Some(Sign::Down)
    }

    /// All cells, sorted by `(row, col)`.
    pub fn cells(&self) -> Vec<Cell> {
        let cols = self.cols();
        let mut out = Vec::new();
        for r in self.rows() {
            out.extend(cols.iter().filter(|&&c| c > r).map(|&c| Cell { row: r, col: c }));
        }
        out
    }

    /// Cells in the order the filler visits them: columns left to right,
    /// each column from its last row upwards. Whatever can cover a cell is
    /// visited before it.
    fn fill_order(&self) -> Vec<Cell> {
        let rows = self.rows();
        let mut out = Vec::new();
        for c in self.cols() {
            out.extend(rows.iter().rev().filter(|&&r| r < c).map(|&r| Cell { row: r, col: c }));
        }
        out
    }

    /// Reversed and negated word.
    pub fn transpose(&self) -> Shape {
        Shape(SignWord::new(self.0.signs().iter().rev().map(|s| s.flip()).collect()))
    }

    /// All `2^m` shapes of size `m`.
    pub fn all(m: usize) -> Vec<Shape> {
        SignWord::all(m).into_iter().map(Shape).collect()
    }
}

impl From<SignWord> for Shape {
    fn from(w: SignWord) -> Self {
        Shape(w)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(Shape)
    }
}

/// A cell, addressed by the positions of its row step and column step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub fn swap(self) -> Self {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    /// Does a dot of this colour at `dot` cover (and forbid dots at) `other`?
    pub fn covers(self, dot: Cell, other: Cell) -> bool {
        match self {
            Color::Red => other.row == dot.row && other.col > dot.col,
            Color::Blue => other.col == dot.col && other.row < dot.row,
        }
    }
}

/// Content of a cell: a dot or nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
    #[serde(rename = ".")]
    Empty,
}

impl Slot {
    pub fn color(self) -> Option<Color> {
        match self {
            Slot::Red => Some(Color::Red),
            Slot::Blue => Some(Color::Blue),
            Slot::Empty => None,
        }
    }
}

impl From<Option<Color>> for Slot {
    fn from(c: Option<Color>) -> Self {
        match c {
            Some(Color::Red) => Slot::Red,
            Some(Color::Blue) => Slot::Blue,
            None => Slot::Empty,
        }
    }
}

/// A shape with dots. Construction does not check the dot rules; see
/// [`Tableau::is_valid`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Shape,
    dots: BTreeMap<Cell, Color>,
}

impl Tableau {
    pub fn new(shape: Shape, dots: BTreeMap<Cell, Color>) -> Self {
        Tableau { shape, dots }
    }

    pub fn from_dots(shape: Shape, dots: impl IntoIterator<Item = (Cell, Color)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (cell, color) in dots {
            if map.insert(cell, color).is_some() {
                return Err(Error::InvalidArgument(format!("two dots in cell ({}, {})", cell.row, cell.col)));
            }
        }
        Ok(Tableau { shape, dots: map })
    }

    /// The empty tableau of size 0.
    pub fn empty() -> Self {
        Tableau::default()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dots(&self) -> &BTreeMap<Cell, Color> {
        &self.dots
    }

    pub fn size(&self) -> usize {
        self.shape.len()
    }

    pub fn slot(&self, cell: Cell) -> Slot {
        self.dots.get(&cell).copied().into()
    }

    pub fn is_valid(&self) -> bool {
        if !self.dots.keys().all(|&c| self.shape.contains(c)) {
            return false;
        }
        let excluded = self
            .dots
            .iter()
            .any(|(&d, &color)| self.dots.keys().any(|&other| color.covers(d, other)));
        if excluded {
            return false;
        }
        self.shape.cells().into_iter().all(|cell| {
            self.dots.contains_key(&cell) || self.dots.iter().any(|(&d, &color)| color.covers(d, cell))
        })
    }

    /// Reverses and negates the shape, mirrors cells and swaps colours.
    pub fn transpose(&self) -> Tableau {
        let m = self.size() + 1;
        Tableau {
            shape: self.shape.transpose(),
            dots: self.dots.iter().map(|(c, col)| (Cell::new(m - c.col, m - c.row), col.swap())).collect(),
        }
    }

    /// Restriction to the steps `start..start + len` (1-based `start`),
    /// renumbered from 1.
    pub fn restrict(&self, start: usize, len: usize) -> Tableau {
        let signs = &self.shape.word().signs()[start - 1..start - 1 + len];
        let end = start + len;
        Tableau {
            shape: Shape(SignWord::new(signs.to_vec())),
            dots: self
                .dots
                .iter()
                .filter(|(c, _)| c.row >= start && c.col < end)
                .map(|(c, &col)| (Cell::new(c.row + 1 - start, c.col + 1 - start), col))
                .collect(),
        }
    }

    /// The unique valid tableau obtained by walking the cells in fill order,
    /// leaving covered cells empty and dotting the others with `pick(cell)`.
    pub fn generate(shape: Shape, mut pick: impl FnMut(Cell) -> Color) -> Tableau {
        let mut dots = BTreeMap::new();
        let mut frontier = Frontier::new(shape.len());
        let mut current_col = 0;
        for cell in shape.fill_order() {
            if cell.col != current_col {
                current_col = cell.col;
                frontier.blue_below = false;
            }
            if !frontier.covered(cell) {
                let color = pick(cell);
                frontier.place(cell, color);
                dots.insert(cell, color);
            }
        }
        Tableau { shape, dots }
    }

    /// Multi-line grid: one line per row step, one column per column step.
    pub fn render(&self) -> String {
        let cols = self.shape.cols();
        let mut out = format!("shape {}\n   ", self.shape);
        for c in &cols {
            out.push_str(&format!("{c:>3}"));
        }
        out.push('\n');
        for r in self.shape.rows() {
            out.push_str(&format!("{r:>3}"));
            for &c in &cols {
                let cell = Cell::new(r, c);
                let ch = if !self.shape.contains(cell) {
                    ' '
                } else {
                    self.dots.get(&cell).map_or('.', |col| col.symbol())
                };
                out.push_str(&format!("{ch:>3}"));
            }
            out.push('\n');
        }
        out
    }
}

/// `+-+-:R@1,2;B@3,4`; the empty shape is `e`.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape)?;
        for (i, (c, col)) in self.dots.iter().enumerate() {
            let sep = if i == 0 { ':' } else { ';' };
            write!(f, "{sep}{}@{},{}", col.symbol(), c.row, c.col)?;
        }
        Ok(())
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()));
        }
        let (shape_part, dots_part) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let shape: Shape = shape_part.parse()?;
        let mut dots = Vec::new();
        let mut pos = shape_part.len() + 1;
        for item in dots_part.into_iter().flat_map(|d| d.split(';')) {
            let bad = |msg: &str| Error::parse(pos, format!("{msg} in dot {item:?}"));
            let item_t = item.trim();
            let (color, at) = item_t.split_once('@').ok_or_else(|| bad("missing '@'"))?;
            let color = match color.trim() {
                "R" | "r" => Color::Red,
                "B" | "b" => Color::Blue,
                _ => return Err(bad("unknown colour")),
            };
            let (r, c) = at.split_once(',').ok_or_else(|| bad("missing ','"))?;
            let row = r.trim().parse().map_err(|_| bad("bad row"))?;
            let col = c.trim().parse().map_err(|_| bad("bad column"))?;
            dots.push((Cell::new(row, col), color));
            pos += item.len() + 1;
        }
        Tableau::from_dots(shape, dots)
    }
}

#[derive(Serialize, Deserialize)]
struct WireDot {
    row: usize,
    col: usize,
    color: Color,
}

#[derive(Serialize, Deserialize)]
struct WireTableau {
    shape: Shape,
    dots: Vec<WireDot>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WireTableau {
            shape: self.shape.clone(),
            dots: self.dots.iter().map(|(c, &color)| WireDot { row: c.row, col: c.col, color }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WireTableau::deserialize(deserializer)?;
        Tableau::from_dots(wire.shape, wire.dots.into_iter().map(|d| (Cell::new(d.row, d.col), d.color)))
            .map_err(serde::de::Error::custom)
    }
}

/// Coverage state while walking cells in fill order.
struct Frontier {
    /// `row_red[r]`: a red dot sits in row `r` in an earlier column.
    row_red: Vec<bool>,
    /// A blue dot sits below the current cell in the current column.
    blue_below: bool,
}

impl Frontier {
    fn new(m: usize) -> Self {
        Frontier { row_red: vec![false; m + 1], blue_below: false }
    }

    fn covered(&self, cell: Cell) -> bool {
        self.row_red[cell.row] || self.blue_below
    }

    fn place(&mut self, cell: Cell, color: Color) {
        match color {
            Color::Red => self.row_red[cell.row] = true,
            Color::Blue => self.blue_below = true,
        }
    }
}

/// Every valid tableau of `shape` agreeing with `prescribed` on the cells it
/// mentions, sorted. Ternary backtracking over the cells in fill order; a
/// branch dies as soon as a dot lands on a covered cell or a cell is left
/// empty and uncovered.
pub fn complete(shape: &Shape, prescribed: &BTreeMap<Cell, Slot>) -> Vec<Tableau> {
    let order = shape.fill_order();
    let mut out = Vec::new();
    let mut dots = BTreeMap::new();
    let mut frontier = Frontier::new(shape.len());
    search(&order, 0, prescribed, &mut frontier, &mut dots, &mut |d| {
        out.push(Tableau { shape: shape.clone(), dots: d.clone() })
    });
    out.sort_unstable();
    out
}

/// Number of valid fillings, without materializing them.
pub fn count_completions(shape: &Shape, prescribed: &BTreeMap<Cell, Slot>) -> u64 {
    let order = shape.fill_order();
    let mut n = 0u64;
    let mut frontier = Frontier::new(shape.len());
    search(&order, 0, prescribed, &mut frontier, &mut BTreeMap::new(), &mut |_| n += 1);
    n
}

fn search(
    order: &[Cell],
    i: usize,
    prescribed: &BTreeMap<Cell, Slot>,
    frontier: &mut Frontier,
    dots: &mut BTreeMap<Cell, Color>,
    emit: &mut dyn FnMut(&BTreeMap<Cell, Color>),
) {
    let Some(&cell) = order.get(i) else {
        emit(dots);
        return;
    };
    let saved_blue = if i == 0 || order[i - 1].col != cell.col { false } else { frontier.blue_below };
    let saved_row = frontier.row_red[cell.row];
    for slot in [Slot::Red, Slot::Blue, Slot::Empty] {
        if prescribed.get(&cell).is_some_and(|&p| p != slot) {
            continue;
        }
        frontier.blue_below = saved_blue;
        frontier.row_red[cell.row] = saved_row;
        let covered = frontier.covered(cell);
        match slot.color() {
            // a dot on a covered cell breaks exclusion
            Some(_) if covered => continue,
            // nothing visited later can cover this cell
            None if !covered => continue,
            Some(color) => {
                frontier.place(cell, color);
                dots.insert(cell, color);
                search(order, i + 1, prescribed, frontier, dots, emit);
                dots.remove(&cell);
            }
            None => search(order, i + 1, prescribed, frontier, dots, emit),
        }
    }
    frontier.blue_below = saved_blue;
    frontier.row_red[cell.row] = saved_row;
}

/// All cells of a shape.
pub fn cells(shape: &Shape) -> Vec<Cell> {
    shape.cells()
}

/// All valid tableaux of a shape, sorted.
pub fn enumerate_tableaux(shape: &Shape) -> Vec<Tableau> {
    complete(shape, &BTreeMap::new())
}

pub fn count_tableaux(shape: &Shape) -> u64 {
    count_completions(shape, &BTreeMap::new())
}

/// All valid tableaux of size `m`, shapes in lexicographic order.
pub fn enumerate_all(m: usize) -> Vec<Tableau> {
    Shape::all(m).par_iter().flat_map_iter(enumerate_tableaux).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(s: &str) -> Shape {
        s.parse().unwrap()
    }

    fn tab(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    /// Literal transcription of the rules: every pair of dots, every cell.
    fn naive_valid(t: &Tableau) -> bool {
        let m = t.size();
        let cell_ok = |c: &Cell| c.row < c.col && t.shape().step(c.row) == Some(Sign::Up) && t.shape().step(c.col) == Some(Sign::Down);
        if !t.dots().keys().all(cell_ok) {
            return false;
        }
        for (d, color) in t.dots() {
            let blocked = match color {
                Color::Red => (d.col + 1..=m).any(|c| t.dots().contains_key(&Cell::new(d.row, c))),
                Color::Blue => (1..d.row).any(|r| t.dots().contains_key(&Cell::new(r, d.col))),
            };
            if blocked {
                return false;
            }
        }
        for r in 1..=m {
            for c in r + 1..=m {
                let cell = Cell::new(r, c);
                if !cell_ok(&cell) || t.dots().contains_key(&cell) {
                    continue;
                }
                let red_left = (1..c).any(|c2| t.dots().get(&Cell::new(r, c2)) == Some(&Color::Red));
                let blue_below = (r + 1..c).any(|r2| t.dots().get(&Cell::new(r2, c)) == Some(&Color::Blue));
                if !red_left && !blue_below {
                    return false;
                }
            }
        }
        true
    }

    /// Every {R, B, empty} assignment, filtered by the naive checker.
    fn brute_force(s: &Shape) -> Vec<Tableau> {
        let cells = s.cells();
        let mut out = Vec::new();
        for code in 0..3u32.pow(cells.len() as u32) {
            let mut k = code;
            let mut dots = BTreeMap::new();
            for &c in &cells {
                match k % 3 {
                    0 => {}
                    1 => {
                        dots.insert(c, Color::Red);
                    }
                    _ => {
                        dots.insert(c, Color::Blue);
                    }
                }
                k /= 3;
            }
            let t = Tableau::new(s.clone(), dots);
            if naive_valid(&t) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn cells_examples() {
        assert_eq!(cells(&shape("+-")), vec![Cell::new(1, 2)]);
        assert!(cells(&shape("-+")).is_empty());
        assert!(cells(&Shape::empty()).is_empty());
    }

    #[test]
    fn validity_examples() {
        assert!(tab("+-:R@1,2").is_valid());
        assert!(!tab("+-").is_valid());
        assert!(!tab("+--:R@1,2;B@1,3").is_valid());
        assert!(tab("+--:B@1,2;R@1,3").is_valid());
        // dot outside the shape
        assert!(!tab("-+:R@1,2").is_valid());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_tableaux(&shape("+-")), vec![tab("+-:R@1,2"), tab("+-:B@1,2")]);
        assert_eq!(enumerate_tableaux(&shape("-+")), vec![Tableau::new(shape("-+"), BTreeMap::new())]);
        assert_eq!(enumerate_tableaux(&shape("+-+-")).len(), 5);
    }

    #[test]
    fn enumerate_all_counts() {
        assert_eq!(enumerate_all(0), vec![Tableau::empty()]);
        assert_eq!(enumerate_all(2).len(), 5);
        assert_eq!(enumerate_all(4).len(), 42);
    }

    #[test]
    fn backtracking_matches_brute_force() {
        for m in 0..=6 {
            for s in Shape::all(m) {
                let fast = enumerate_tableaux(&s);
                assert_eq!(fast, brute_force(&s), "shape {s}");
                assert_eq!(count_tableaux(&s), fast.len() as u64);
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(Tableau::empty().transpose(), Tableau::empty());
        assert_eq!(tab("+-:R@1,2").transpose(), tab("+-:B@1,2"));
        let t = tab("+-+-:B@1,2;R@3,4");
        assert_eq!(t.transpose().transpose(), t);
    }

    #[test]
    fn restriction_to_blocks_stays_valid() {
        for t in enumerate_all(6) {
            for start in 1..=t.size() {
                for len in 0..=t.size() + 1 - start {
                    assert!(t.restrict(start, len).is_valid(), "{t} restricted to {start}+{len}");
                }
            }
        }
    }

    #[test]
    fn prescribed_cells_are_respected() {
        let s = shape("+-+-");
        let fixed: BTreeMap<Cell, Slot> = [(Cell::new(1, 2), Slot::Blue)].into();
        let out = complete(&s, &fixed);
        assert_eq!(out.len(), 3);
        assert!(out.iter().all(|t| t.slot(Cell::new(1, 2)) == Slot::Blue));
        let empty_forced: BTreeMap<Cell, Slot> = [(Cell::new(1, 2), Slot::Empty)].into();
        assert!(complete(&s, &empty_forced).is_empty());
    }

    #[test]
    fn text_and_json_forms() {
        let t = tab("+-+-:B@1,2;R@3,4");
        assert_eq!(t.to_string(), "+-+-:B@1,2;R@3,4");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"shape":[1,-1,1,-1],"dots":[{"row":1,"col":2,"color":"B"},{"row":3,"col":4,"color":"R"}]}"#);
        assert_eq!(json.parse::<Tableau>().unwrap(), t);
        assert_eq!(tab("e"), Tableau::empty());
        assert!("+-:R@1,2;B@1,2".parse::<Tableau>().is_err());
        assert!("+-:X@1,2".parse::<Tableau>().is_err());
    }

    #[test]
    fn render_grid() {
        let t = tab("+-+-:B@1,2;R@3,4");
        assert_eq!(t.render(), "shape +-+-\n     2  4\n  1  B  .\n  3     R\n");
    }

    fn arb_shape(max: usize) -> impl Strategy<Value = Shape> {
        prop::collection::vec(prop::bool::ANY, 0..=max)
            .prop_map(|v| Shape::new(v.into_iter().map(|b| if b { Sign::Up } else { Sign::Down }).collect::<Vec<_>>().into()))
    }

    fn arb_valid(max: usize) -> impl Strategy<Value = Tableau> {
        (arb_shape(max), prop::collection::vec(prop::bool::ANY, 64)).prop_map(|(s, bits)| {
            let mut i = 0;
            Tableau::generate(s, |_| {
                i += 1;
                if bits[i % bits.len()] { Color::Red } else { Color::Blue }
            })
        })
    }

    fn arb_dotted(max: usize) -> impl Strategy<Value = Tableau> {
        (arb_shape(max), prop::collection::vec(0u8..3, 64)).prop_map(|(s, picks)| {
            let dots = s
                .cells()
                .into_iter()
                .zip(picks)
                .filter_map(|(c, p)| match p {
                    0 => None,
                    1 => Some((c, Color::Red)),
                    _ => Some((c, Color::Blue)),
                })
                .collect();
            Tableau::new(s, dots)
        })
    }

    proptest! {
        #[test]
        fn checker_agrees_with_naive(t in arb_dotted(9)) {
            prop_assert_eq!(t.is_valid(), naive_valid(&t));
        }

        #[test]
        fn generated_tableaux_are_valid(t in arb_valid(12)) {
            prop_assert!(t.is_valid());
            prop_assert!(t.transpose().is_valid());
            prop_assert_eq!(t.transpose().transpose(), t);
        }

        #[test]
        fn json_round_trip(t in arb_valid(12)) {
            let json = serde_json::to_string(&t).unwrap();
            prop_assert_eq!(serde_json::from_str::<Tableau>(&json).unwrap(), t.clone());
            prop_assert_eq!(t.to_string().parse::<Tableau>().unwrap(), t);
        }
    }
}
