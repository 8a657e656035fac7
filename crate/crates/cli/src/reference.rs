//! Published sum-rule tables: splits as printed (truncated), totals exact.

use sumrule_core::sumrules::ChannelSelector;

pub struct Row {
    pub order: i64,
    /// Printed discrete and continuum parts; `None` where only the total is tabulated.
    pub split: Option<(&'static str, &'static str)>,
    pub total: &'static str,
}

pub struct Table {
    pub name: &'static str,
    pub n: u32,
    pub l: u32,
    pub channel: ChannelSelector,
    pub rows: &'static [Row],
    /// Orders whose continuum must be reported divergent.
    pub divergent: &'static [i64],
}

const fn row(order: i64, discrete: &'static str, continuum: &'static str, total: &'static str) -> Row {
    Row { order, split: Some((discrete, continuum)), total }
}

const fn total(order: i64, total: &'static str) -> Row {
    Row { order, split: None, total }
}

pub const TABLES: [Table; 6] = [
    Table {
        name: "1S positive",
        n: 1,
        l: 0,
        channel: ChannelSelector::Plus,
        rows: &[
            row(0, "0.716587", "0.283412", "1"),
            row(1, "0.565003", "0.434996", "1"),
            row(2, "0.449355", "0.883977", "4/3"),
            row(3, "0.360841", "4.972492", "16/3"),
        ],
        divergent: &[4],
    },
    Table {
        name: "1S negative",
        n: 1,
        l: 0,
        channel: ChannelSelector::Plus,
        rows: &[
            row(-1, "0.915814", "0.209185", "9/8"),
            row(-2, "1.178262", "0.165487", "43/32"),
            row(-3, "1.524670", "0.136787", "319/192"),
            row(-4, "1.982648", "0.116526", "9673/4608"),
        ],
        divergent: &[],
    },
    Table {
        name: "2S",
        n: 2,
        l: 0,
        channel: ChannelSelector::Plus,
        rows: &[
            row(0, "13.176806", "0.823193", "14"),
            row(1, "0.648907", "0.351092", "1"),
            row(2, "0.104632", "0.228701", "1/3"),
            row(3, "0.017622", "0.649044", "2/3"),
            row(-1, "27.70006", "2.29993", "30"),
            row(-2, "187.959", "7.04049", "195"),
        ],
        divergent: &[4],
    },
    Table {
        name: "2P minus",
        n: 2,
        l: 1,
        channel: ChannelSelector::Minus,
        rows: &[
            row(0, "9.93978", "0.06021", "10"),
            row(1, "-0.35677", "0.02344", "-1/3"),
            row(2, "0.32166", "0.01167", "1/3"),
            row(3, "-0.23252", "0.01030", "-2/9"),
            row(4, "0.17586", "0.04636", "2/9"),
            row(-1, "1.82473", "0.17526", "2"),
            row(-2, "18.4514", "0.5485", "19"),
        ],
        divergent: &[5],
    },
    Table {
        name: "2P plus",
        n: 2,
        l: 1,
        channel: ChannelSelector::Plus,
        rows: &[
            row(0, "7.38669", "0.61330", "8"),
            row(1, "1.11382", "0.21951", "4/3"),
            row(2, "0.17304", "0.09362", "4/15"),
            row(3, "0.02790", "0.06098", "4/45"),
            row(4, "0.00470", "0.17307", "8/45"),
            row(-1, "50.1225", "1.87746", "52"),
            row(-2, "345.927", "6.07274", "352"),
        ],
        divergent: &[5],
    },
    Table {
        name: "2P total",
        n: 2,
        l: 1,
        channel: ChannelSelector::Total,
        rows: &[
            total(0, "18"),
            total(1, "1"),
            total(2, "3/5"),
            total(3, "-2/15"),
            total(4, "2/5"),
            total(-1, "54"),
            total(-2, "371"),
        ],
        divergent: &[5],
    },
];

/// Distance from `value` to the interval a truncated printed number stands for.
pub fn printed_gap(value: f64, printed: &str) -> f64 {
    let p: f64 = printed.parse().expect("printed table entry");
    let decimals = printed.split_once('.').map_or(0, |(_, d)| d.len()) as i32;
    let unit = 10f64.powi(-decimals);
    let (lo, hi) = if p >= 0.0 { (p, p + unit) } else { (p - unit, p) };
    (lo - value).max(value - hi).max(0.0)
}
