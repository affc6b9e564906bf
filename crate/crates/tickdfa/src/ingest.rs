//! Tick-file ingestion and intertrade-duration construction.
//!
//! Trading days consist of two two-hour continuous-auction sessions
//! (09:30-11:30 and 13:00-15:00). Trades outside those windows (call
//! auction, noon closure, after hours) are discarded at parse time. Within a
//! session, trades stamped with identical times are collapsed into one trade
//! before durations are formed, and no duration ever spans the overnight or
//! noon gap.
//!
//! Timestamps are stored as integer hundredths of a second so the 0.01 s
//! resolution of the source data is exact and simultaneous-trade detection
//! never depends on float equality. Trades stamped exactly on a session
//! open/close boundary are retained; close prints are counted in
//! [`TickSeries::close_boundary_ticks`] so downstream reports can surface
//! them.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Hundredths of a second in one two-hour session.
pub const SESSION_LEN_CS: u32 = 720_000;
/// One-minute bins per trading day (120 morning + 120 afternoon).
pub const BINS_PER_DAY: usize = 240;

const CS_PER_MINUTE: u32 = 6_000;
const CS_PER_HOUR: u32 = 360_000;
const MORNING_OPEN_CS: u32 = 9 * CS_PER_HOUR + 30 * CS_PER_MINUTE;
const AFTERNOON_OPEN_CS: u32 = 13 * CS_PER_HOUR;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Session {
    Morning,
    Afternoon,
}

impl Session {
    /// First bin index of this session within the 240-bin day.
    pub fn bin_base(self) -> u16 {
        match self {
            Session::Morning => 0,
            Session::Afternoon => 120,
        }
    }

    pub fn from_bin(bin: u16) -> Session {
        if bin < 120 {
            Session::Morning
        } else {
            Session::Afternoon
        }
    }

    fn open_clock_cs(self) -> u32 {
        match self {
            Session::Morning => MORNING_OPEN_CS,
            Session::Afternoon => AFTERNOON_OPEN_CS,
        }
    }
}

/// One retained trade: day index, session, and time since session open in
/// hundredths of a second (`0 ..= SESSION_LEN_CS`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tick {
    pub day: u32,
    pub session: Session,
    pub time_cs: u32,
}

impl Tick {
    pub fn time_seconds(&self) -> f64 {
        self.time_cs as f64 / 100.0
    }
}

/// Ordered trade timestamps for one instrument, partitioned into sessions.
#[derive(Debug, Clone)]
pub struct TickSeries {
    pub symbol: String,
    dates: Vec<String>,
    ticks: Vec<Tick>,
    /// Rows outside the continuous-auction windows, dropped at parse time.
    pub discarded_rows: usize,
    /// Retained trades stamped exactly on a session close (11:30:00.00 or
    /// 15:00:00.00).
    pub close_boundary_ticks: usize,
}

impl TickSeries {
    pub fn new(symbol: impl Into<String>, dates: Vec<String>, ticks: Vec<Tick>) -> Self {
        let close_boundary_ticks = ticks.iter().filter(|t| t.time_cs == SESSION_LEN_CS).count();
        TickSeries {
            symbol: symbol.into(),
            dates,
            ticks,
            discarded_rows: 0,
            close_boundary_ticks,
        }
    }

    pub fn ticks(&self) -> &[Tick] {
        &self.ticks
    }

    pub fn dates(&self) -> &[String] {
        &self.dates
    }

    pub fn len(&self) -> usize {
        self.ticks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ticks.is_empty()
    }

    pub fn day_count(&self) -> usize {
        self.dates.len()
    }
}

fn parse_date(field: &str, line: usize) -> Result<()> {
    let b = field.as_bytes();
    let ok = b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter()
            .enumerate()
            .all(|(i, &c)| i == 4 || i == 7 || c.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::Parse {
            line,
            message: format!("expected date as YYYY-MM-DD, got {field:?}"),
        })
    }
}

/// Parse `HH:MM:SS.cc` into hundredths of a second since midnight.
fn parse_clock_cs(field: &str, line: usize) -> Result<u32> {
    let b = field.as_bytes();
    let bad = || Error::Parse {
        line,
        message: format!("expected time as HH:MM:SS.cc, got {field:?}"),
    };
    if b.len() != 11 || b[2] != b':' || b[5] != b':' || b[8] != b'.' {
        return Err(bad());
    }
    let digits: Vec<u32> = b
        .iter()
        .enumerate()
        .filter(|(i, _)| ![2usize, 5, 8].contains(i))
        .map(|(_, &c)| {
            if c.is_ascii_digit() {
                Ok((c - b'0') as u32)
            } else {
                Err(bad())
            }
        })
        .collect::<Result<_>>()?;
    let (h, m, s, c) = (
        digits[0] * 10 + digits[1],
        digits[2] * 10 + digits[3],
        digits[4] * 10 + digits[5],
        digits[6] * 10 + digits[7],
    );
    if h >= 24 || m >= 60 || s >= 60 {
        return Err(bad());
    }
    Ok(h * CS_PER_HOUR + m * CS_PER_MINUTE + s * 100 + c)
}

fn session_of_clock(clock_cs: u32) -> Option<(Session, u32)> {
    for session in [Session::Morning, Session::Afternoon] {
        let open = session.open_clock_cs();
        if (open..=open + SESSION_LEN_CS).contains(&clock_cs) {
            return Some((session, clock_cs - open));
        }
    }
    None
}

/// Parse a tick CSV (`date,time` header, one trade per row, times at 0.01 s
/// resolution) into a [`TickSeries`].
///
/// Rows outside the 09:30-11:30 and 13:00-15:00 windows are discarded and
/// counted. Rows must be chronological: dates non-decreasing, sessions in
/// day order, timestamps non-decreasing within a session (duplicates are
/// allowed here and collapsed later).
pub fn parse_ticks(input: &str, symbol: &str) -> Result<TickSeries> {
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == "date,time" => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header \"date,time\", got {header:?}"),
            })
        }
        None => return Err(Error::EmptyInput("tick file")),
    }

    let mut dates: Vec<String> = Vec::new();
    let mut ticks: Vec<Tick> = Vec::new();
    let mut discarded = 0usize;

    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        if row.is_empty() {
            return Err(Error::Parse {
                line,
                message: "blank row".into(),
            });
        }
        let (date, time) = row.split_once(',').ok_or_else(|| Error::Parse {
            line,
            message: "expected two comma-separated fields".into(),
        })?;
        parse_date(date, line)?;
        let clock_cs = parse_clock_cs(time, line)?;

        let day = match dates.last() {
            Some(last) if last.as_str() == date => dates.len() as u32 - 1,
            Some(last) if last.as_str() > date => {
                return Err(Error::Ordering {
                    line,
                    message: format!("date {date} precedes {last}"),
                })
            }
            _ => {
                dates.push(date.to_string());
                dates.len() as u32 - 1
            }
        };

        let Some((session, time_cs)) = session_of_clock(clock_cs) else {
            discarded += 1;
            continue;
        };

        if let Some(prev) = ticks.last() {
            if prev.day == day {
                if prev.session > session {
                    return Err(Error::Ordering {
                        line,
                        message: "afternoon trade precedes a morning trade".into(),
                    });
                }
                if prev.session == session && time_cs < prev.time_cs {
                    return Err(Error::Ordering {
                        line,
                        message: format!(
                            "timestamp decreases within a session ({time} after a later trade)"
                        ),
                    });
                }
            }
        }

        ticks.push(Tick {
            day,
            session,
            time_cs,
        });
    }

    let mut series = TickSeries::new(symbol, dates, ticks);
    series.discarded_rows = discarded;
    Ok(series)
}

fn format_clock(cs: u32) -> String {
    let h = cs / CS_PER_HOUR;
    let m = (cs % CS_PER_HOUR) / CS_PER_MINUTE;
    let s = (cs % CS_PER_MINUTE) / 100;
    let c = cs % 100;
    format!("{h:02}:{m:02}:{s:02}.{c:02}")
}

/// Serialize a [`TickSeries`] back to the tick CSV format. Retained rows of
/// a parsed file reproduce byte-identically.
pub fn serialize_ticks(series: &TickSeries) -> String {
    let mut out = String::from("date,time\n");
    for tick in &series.ticks {
        let clock = tick.session.open_clock_cs() + tick.time_cs;
        out.push_str(&series.dates[tick.day as usize]);
        out.push(',');
        out.push_str(&format_clock(clock));
        out.push('\n');
    }
    out
}

/// Merge consecutive trades with identical `(day, session, time)` into one
/// trade, making timestamps strictly increasing within every session.
pub fn collapse_simultaneous(series: &TickSeries) -> TickSeries {
    let mut ticks: Vec<Tick> = Vec::with_capacity(series.ticks.len());
    for &tick in &series.ticks {
        if ticks.last() != Some(&tick) {
            ticks.push(tick);
        }
    }
    let mut out = TickSeries::new(series.symbol.clone(), series.dates.clone(), ticks);
    out.discarded_rows = series.discarded_rows;
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DurationUnit {
    Seconds,
    /// After intraday adjustment each duration is a ratio to its bin mean.
    Dimensionless,
}

/// One intertrade duration tagged with the day, 1-min bin, and session of
/// its terminating trade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DurationEntry {
    pub tau: f64,
    pub day: u32,
    pub bin: u16,
    pub session: Session,
}

/// Ordered positive intertrade durations for one instrument.
#[derive(Debug, Clone)]
pub struct DurationSeries {
    pub symbol: String,
    pub unit: DurationUnit,
    entries: Vec<DurationEntry>,
}

impl DurationSeries {
    pub fn new(
        symbol: impl Into<String>,
        unit: DurationUnit,
        entries: Vec<DurationEntry>,
    ) -> Result<Self> {
        for e in &entries {
            if !(e.tau > 0.0) || !e.tau.is_finite() {
                return Err(Error::config(format!(
                    "non-positive duration {} at day {} bin {}",
                    e.tau, e.day, e.bin
                )));
            }
            if e.bin as usize >= BINS_PER_DAY {
                return Err(Error::config(format!("bin {} out of range", e.bin)));
            }
        }
        Ok(DurationSeries {
            symbol: symbol.into(),
            unit,
            entries,
        })
    }

    /// Wrap a bare positive series, mapping positions cyclically onto the
    /// 240-bin day (entry `i` lands in bin `i % 240` of day `i / 240`).
    /// Used for synthetic series that have no real clock.
    pub fn from_values(symbol: impl Into<String>, values: &[f64], unit: DurationUnit) -> Result<Self> {
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, &tau)| {
                let bin = (i % BINS_PER_DAY) as u16;
                DurationEntry {
                    tau,
                    day: (i / BINS_PER_DAY) as u32,
                    bin,
                    session: Session::from_bin(bin),
                }
            })
            .collect();
        DurationSeries::new(symbol, unit, entries)
    }

    pub fn entries(&self) -> &[DurationEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.tau).collect()
    }

    pub fn mean(&self) -> f64 {
        if self.entries.is_empty() {
            return f64::NAN;
        }
        self.entries.iter().map(|e| e.tau).sum::<f64>() / self.entries.len() as f64
    }

    /// Number of distinct trading days present.
    pub fn day_count(&self) -> usize {
        let mut days: Vec<u32> = self.entries.iter().map(|e| e.day).collect();
        days.sort_unstable();
        days.dedup();
        days.len()
    }

    /// Trade count implied by the durations: each `(day, session)` group of
    /// `k` durations came from `k + 1` collapsed trades.
    pub fn implied_trades(&self) -> usize {
        let mut groups: Vec<(u32, Session)> =
            self.entries.iter().map(|e| (e.day, e.session)).collect();
        groups.sort_unstable();
        groups.dedup();
        self.entries.len() + groups.len()
    }
}

/// Form intertrade durations within every `(day, session)` group of a
/// collapsed tick series. Each duration is tagged with the bin of its
/// terminating trade; sessions with fewer than two trades contribute
/// nothing, and no duration crosses the overnight or noon gap.
pub fn compute_durations(series: &TickSeries) -> Result<DurationSeries> {
    let mut entries = Vec::with_capacity(series.ticks.len().saturating_sub(1));
    for (i, pair) in series.ticks.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if (a.day, a.session) != (b.day, b.session) {
            continue;
        }
        if b.time_cs <= a.time_cs {
            return Err(Error::Ordering {
                line: i + 2,
                message: "ticks not strictly increasing; collapse simultaneous trades first"
                    .into(),
            });
        }
        // The close print at exactly two hours belongs to the session's
        // last minute.
        let minute = ((b.time_cs / CS_PER_MINUTE) as u16).min(119);
        let bin = b.session.bin_base() + minute;
        entries.push(DurationEntry {
            tau: (b.time_cs - a.time_cs) as f64 / 100.0,
            day: b.day,
            bin,
            session: b.session,
        });
    }
    DurationSeries::new(series.symbol.clone(), DurationUnit::Seconds, entries)
}

/// Parse the pre-computed duration CSV (`day,bin,tau` header).
pub fn parse_durations_csv(input: &str, symbol: &str) -> Result<DurationSeries> {
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == "day,bin,tau" => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header \"day,bin,tau\", got {header:?}"),
            })
        }
        None => return Err(Error::EmptyInput("duration file")),
    }
    let mut entries = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        if row.is_empty() {
            return Err(Error::Parse {
                line,
                message: "blank row".into(),
            });
        }
        let mut fields = row.split(',');
        let (Some(day), Some(bin), Some(tau), None) = (
            fields.next(),
            fields.next(),
            fields.next(),
            fields.next(),
        ) else {
            return Err(Error::Parse {
                line,
                message: "expected three comma-separated fields".into(),
            });
        };
        let day: u32 = day.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad day index {day:?}"),
        })?;
        let bin: u16 = bin.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad bin index {bin:?}"),
        })?;
        if bin as usize >= BINS_PER_DAY {
            return Err(Error::Parse {
                line,
                message: format!("bin {bin} out of range 0..240"),
            });
        }
        let tau: f64 = tau.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad duration {tau:?}"),
        })?;
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("duration must be positive, got {tau}"),
            });
        }
        entries.push(DurationEntry {
            tau,
            day,
            bin,
            session: Session::from_bin(bin),
        });
    }
    DurationSeries::new(symbol, DurationUnit::Seconds, entries)
}

/// Serialize a [`DurationSeries`] to the `day,bin,tau` CSV format.
pub fn serialize_durations_csv(series: &DurationSeries) -> String {
    let mut out = String::from("day,bin,tau\n");
    for e in &series.entries {
        out.push_str(&format!("{},{},{}\n", e.day, e.bin, e.tau));
    }
    out
}
