//! Text formats: the line-oriented game file (`gbg 1` / `gr1 1` headers),
//! the result file carrying winning sets plus strategies and certificates,
//! and the order-independent partition checksum used by the bench harness.
//!
//! Game grammar (one record per line, `#` starts a comment):
//!
//! ```text
//! gbg 1                     (or: gr1 1)
//! n <vertex count>
//! owners <count tokens, each 1|2>
//! edges <m>
//! <u> <v>                   (m lines, 0-based ids)
//! targets <k>               (gbg; gr1 uses: assume <k1> ... guarantee <k2>)
//! <size> <ids...>           (one line per set)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::Error;
use crate::game::{
    GameGraph, GenBuchiObjective, Gr1Objective, Objective, Player, VertexSet, NO_VERTEX,
};
use crate::strategy::{
    Gr1CertRecord, Gr1Certificate, P1GenBuchiStrategy, P1Gr1Strategy, P2CertRecord,
    P2GenBuchiCertificate,
};
use crate::game::DominionSource;

struct Reader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    last_line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Reader<'a> {
        Reader {
            lines: text.lines().enumerate(),
            last_line: 0,
        }
    }

    /// Next non-empty, non-comment line as tokens.
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.lines.by_ref() {
            self.last_line = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((idx + 1, tokens));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), Error> {
        self.next()
            .ok_or_else(|| Error::parse(self.last_line + 1, format!("missing {what}")))
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, Error> {
    token
        .parse::<T>()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

fn parse_id(line: usize, token: &str, n: usize) -> Result<u32, Error> {
    let v: u32 = parse_num(line, token, "vertex id")?;
    if v as usize >= n {
        return Err(Error::parse(line, format!("vertex id {v} out of range 0..{n}")));
    }
    Ok(v)
}

/// Reads a `<size> <ids...>` set line.
fn parse_set_line(line: usize, tokens: &[&str], n: usize, what: &str) -> Result<Vec<u32>, Error> {
    if tokens.is_empty() {
        return Err(Error::parse(line, format!("empty {what} line")));
    }
    let size: usize = parse_num(line, tokens[0], "set size")?;
    if tokens.len() != size + 1 {
        return Err(Error::parse(
            line,
            format!("{what} declares {size} members but lists {}", tokens.len() - 1),
        ));
    }
    tokens[1..]
        .iter()
        .map(|t| parse_id(line, t, n))
        .collect()
}

/// Parses a game file into a graph and its objective. Rejects structural
/// problems (bad ids, duplicate edges, vertices without successors) with
/// line-anchored errors.
pub fn parse_game(text: &str) -> Result<(GameGraph, Objective), Error> {
    let mut r = Reader::new(text);
    let (hline, header) = r.expect("header line")?;
    if header.len() != 2 || header[1] != "1" {
        return Err(Error::parse(hline, "expected header `gbg 1` or `gr1 1`"));
    }
    let is_gr1 = match header[0] {
        "gbg" => false,
        "gr1" => true,
        other => return Err(Error::parse(hline, format!("unknown format tag `{other}`"))),
    };

    let (nline, ntok) = r.expect("`n <count>` line")?;
    if ntok.len() != 2 || ntok[0] != "n" {
        return Err(Error::parse(nline, "expected `n <count>`"));
    }
    let n: usize = parse_num(nline, ntok[1], "vertex count")?;
    if n == 0 {
        return Err(Error::parse(nline, "vertex count must be positive"));
    }

    let (oline, otok) = r.expect("`owners` line")?;
    if otok.first() != Some(&"owners") {
        return Err(Error::parse(oline, "expected `owners <tags...>`"));
    }
    if otok.len() != n + 1 {
        return Err(Error::parse(
            oline,
            format!("expected {n} owner tags, found {}", otok.len() - 1),
        ));
    }
    let mut owners = Vec::with_capacity(n);
    for t in &otok[1..] {
        let tag: u8 = parse_num(oline, t, "owner tag")?;
        owners.push(
            Player::from_tag(tag)
                .ok_or_else(|| Error::parse(oline, format!("owner tag must be 1 or 2, got {tag}")))?,
        );
    }

    let (eline, etok) = r.expect("`edges <m>` line")?;
    if etok.len() != 2 || etok[0] != "edges" {
        return Err(Error::parse(eline, "expected `edges <m>`"));
    }
    let m: usize = parse_num(eline, etok[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(m);
    for i in 0..m {
        let (line, tok) = r
            .expect(&format!("edge line {} of {m}", i + 1))
            .map_err(|_| Error::parse(r.last_line + 1, format!("missing edge line {} of {m}", i + 1)))?;
        if tok.len() != 2 {
            return Err(Error::parse(line, "edge line must be `<from> <to>`"));
        }
        let u = parse_id(line, tok[0], n)?;
        let v = parse_id(line, tok[1], n)?;
        if !seen.insert((u, v)) {
            return Err(Error::parse(line, format!("duplicate edge {u} -> {v}")));
        }
        edges.push((u, v));
    }

    let objective = if is_gr1 {
        let assumptions = parse_set_block(&mut r, "assume", n)?;
        let guarantees = parse_set_block(&mut r, "guarantee", n)?;
        Objective::Gr1(Gr1Objective::new(n, &assumptions, &guarantees)?)
    } else {
        let targets = parse_set_block(&mut r, "targets", n)?;
        Objective::GenBuchi(GenBuchiObjective::new(n, &targets)?)
    };

    if let Some((line, _)) = r.next() {
        return Err(Error::parse(line, "trailing content after the objective block"));
    }

    let g = GameGraph::new(owners, &edges).expect("ids and duplicates were checked while reading");
    for violation in g.validate() {
        return Err(Error::parse(eline, violation.to_string()));
    }
    Ok((g, objective))
}

fn parse_set_block(r: &mut Reader<'_>, keyword: &str, n: usize) -> Result<Vec<Vec<u32>>, Error> {
    let (line, tok) = r.expect(&format!("`{keyword} <count>` line"))?;
    if tok.len() != 2 || tok[0] != keyword {
        return Err(Error::parse(line, format!("expected `{keyword} <count>`")));
    }
    let count: usize = parse_num(line, tok[1], "set count")?;
    if count == 0 {
        return Err(Error::parse(line, format!("`{keyword}` needs at least one set")));
    }
    let mut sets = Vec::with_capacity(count);
    for i in 0..count {
        let (sline, stok) = r.expect(&format!("{keyword} set {} of {count}", i + 1))?;
        sets.push(parse_set_line(sline, &stok, n, keyword)?);
    }
    Ok(sets)
}

fn write_set_line(out: &mut String, set: &VertexSet) {
    let _ = write!(out, "{}", set.len());
    for v in set.iter() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

/// Canonical serialization; `parse_game(serialize_game(g, obj))` rebuilds
/// identical structures.
pub fn serialize_game(g: &GameGraph, obj: &Objective) -> String {
    let mut out = String::new();
    let tag = match obj {
        Objective::GenBuchi(_) => "gbg",
        Objective::Gr1(_) => "gr1",
    };
    let _ = writeln!(out, "{tag} 1");
    let _ = writeln!(out, "n {}", g.n());
    out.push_str("owners");
    for v in 0..g.n() as u32 {
        let _ = write!(out, " {}", g.owner(v).tag());
    }
    out.push('\n');
    let _ = writeln!(out, "edges {}", g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    match obj {
        Objective::GenBuchi(o) => {
            let _ = writeln!(out, "targets {}", o.k());
            for t in o.targets() {
                write_set_line(&mut out, t);
            }
        }
        Objective::Gr1(o) => {
            let _ = writeln!(out, "assume {}", o.k1());
            for t in o.assumptions() {
                write_set_line(&mut out, t);
            }
            let _ = writeln!(out, "guarantee {}", o.k2());
            for t in o.guarantees() {
                write_set_line(&mut out, t);
            }
        }
    }
    out
}

/// Order-independent FNV-1a hash of the winning partition, used by the
/// bench CSV so rows are comparable across algorithm variants.
pub fn partition_checksum(w1: &VertexSet, w2: &VertexSet) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(b"W1");
    for v in w1.iter() {
        feed(&v.to_le_bytes());
    }
    feed(b"W2");
    for v in w2.iter() {
        feed(&v.to_le_bytes());
    }
    h
}

/// A solve result plus its witnesses, as stored in result files.
#[derive(Debug, Clone)]
pub enum ResultFile {
    GenBuchi {
        w1: VertexSet,
        w2: VertexSet,
        strategy: P1GenBuchiStrategy,
        certificate: P2GenBuchiCertificate,
    },
    Gr1 {
        w1: VertexSet,
        w2: VertexSet,
        strategy: P1Gr1Strategy,
        certificate: Gr1Certificate,
    },
}

fn write_pairs(out: &mut String, pairs: &[(u32, u32)]) {
    let _ = write!(out, "{}", pairs.len());
    for &(a, b) in pairs {
        let _ = write!(out, " {a} {b}");
    }
    out.push('\n');
}

fn write_moves(out: &mut String, prefix: &str, m: usize, moves: &[u32]) {
    let defined: Vec<(u32, u32)> = moves
        .iter()
        .enumerate()
        .filter(|&(_, &mv)| mv != NO_VERTEX)
        .map(|(v, &mv)| (v as u32, mv))
        .collect();
    let _ = write!(out, "{prefix} moves {m} ");
    write_pairs(out, &defined);
}

fn write_strategy_block(out: &mut String, prefix: &str, s: &P1GenBuchiStrategy) {
    let _ = writeln!(out, "{prefix} k {}", s.k);
    let _ = writeln!(out, "{prefix} player {}", s.player.tag());
    let _ = write!(out, "{prefix} init");
    for &m in &s.init_memory {
        let _ = write!(out, " {m}");
    }
    out.push('\n');
    for m in 0..s.k {
        let _ = write!(out, "{prefix} advance {m} ");
        write_set_line(out, &s.advance[m]);
    }
    for m in 0..s.k {
        write_moves(out, prefix, m, &s.moves[m]);
    }
}

/// Serializes a result file.
pub fn serialize_result(rf: &ResultFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ggr 1");
    match rf {
        ResultFile::GenBuchi {
            w1,
            w2,
            strategy,
            certificate,
        } => {
            let _ = writeln!(out, "kind gbg");
            out.push_str("w1 ");
            write_set_line(&mut out, w1);
            out.push_str("w2 ");
            write_set_line(&mut out, w2);
            write_strategy_block(&mut out, "strategy", strategy);
            let _ = writeln!(out, "certificate records {}", certificate.records.len());
            for (i, rec) in certificate.records.iter().enumerate() {
                let level = rec
                    .level
                    .map(|l| l.to_string())
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "record {i} witness {} level {level}", rec.witness);
                let _ = write!(out, "record {i} s ");
                write_set_line(&mut out, &rec.s_set);
                let _ = write!(out, "record {i} d ");
                write_set_line(&mut out, &rec.d_set);
                let _ = write!(out, "record {i} stay ");
                write_pairs(&mut out, &rec.stay);
                let _ = write!(out, "record {i} attr ");
                write_pairs(&mut out, &rec.attr);
            }
        }
        ResultFile::Gr1 {
            w1,
            w2,
            strategy,
            certificate,
        } => {
            let _ = writeln!(out, "kind gr1");
            out.push_str("w1 ");
            write_set_line(&mut out, w1);
            out.push_str("w2 ");
            write_set_line(&mut out, w2);
            let _ = writeln!(out, "strategy k2 {}", strategy.k2);
            for c in 0..strategy.k2 {
                let _ = write!(out, "strategy advance {c} ");
                write_set_line(&mut out, &strategy.advance[c]);
            }
            for c in 0..strategy.k2 {
                write_moves(&mut out, "strategy", c, &strategy.moves[c]);
            }
            let _ = writeln!(out, "certificate records {}", certificate.records.len());
            for (i, rec) in certificate.records.iter().enumerate() {
                let source = match rec.source {
                    DominionSource::Small { level } => format!("small {level}"),
                    DominionSource::Large => "large".into(),
                };
                let _ = writeln!(
                    out,
                    "record {i} witness {} source {source}",
                    rec.witness_guarantee
                );
                let _ = write!(out, "record {i} s ");
                write_set_line(&mut out, &rec.s_set);
                let _ = write!(out, "record {i} d ");
                write_set_line(&mut out, &rec.d_set);
                let _ = write!(out, "record {i} attr ");
                write_pairs(&mut out, &rec.attr);
                write_strategy_block(&mut out, &format!("record {i} inner"), &rec.inner);
            }
        }
    }
    out
}

struct ResultReader<'a> {
    r: Reader<'a>,
    n: usize,
}

impl<'a> ResultReader<'a> {
    fn keyword_line(&mut self, expect: &[&str]) -> Result<(usize, Vec<&'a str>), Error> {
        let (line, tok) = self.r.expect(&expect.join(" "))?;
        if tok.len() < expect.len() || &tok[..expect.len()] != expect {
            return Err(Error::parse(line, format!("expected `{}` line", expect.join(" "))));
        }
        Ok((line, tok[expect.len()..].to_vec()))
    }

    fn set_line(&mut self, expect: &[&str]) -> Result<VertexSet, Error> {
        let (line, rest) = self.keyword_line(expect)?;
        let ids = parse_set_line(line, &rest, self.n, expect[0])?;
        Ok(VertexSet::from_ids(self.n, ids))
    }

    fn pairs_line(&mut self, expect: &[&str]) -> Result<Vec<(u32, u32)>, Error> {
        let (line, rest) = self.keyword_line(expect)?;
        if rest.is_empty() {
            return Err(Error::parse(line, "missing pair count"));
        }
        let count: usize = parse_num(line, rest[0], "pair count")?;
        if rest.len() != 1 + 2 * count {
            return Err(Error::parse(line, "pair list length mismatch"));
        }
        let mut pairs = Vec::with_capacity(count);
        for i in 0..count {
            let a = parse_id(line, rest[1 + 2 * i], self.n)?;
            let b = parse_id(line, rest[2 + 2 * i], self.n)?;
            pairs.push((a, b));
        }
        Ok(pairs)
    }

    fn strategy_block(
        &mut self,
        prefix: &[&str],
        region: &VertexSet,
    ) -> Result<P1GenBuchiStrategy, Error> {
        let (line, rest) = self.keyword_line(&[prefix, &["k"]].concat())?;
        if rest.len() != 1 {
            return Err(Error::parse(line, "expected `k <count>`"));
        }
        let k: usize = parse_num(line, rest[0], "counter state count")?;
        if k == 0 {
            return Err(Error::parse(line, "strategy needs at least one counter state"));
        }
        let (pline, prest) = self.keyword_line(&[prefix, &["player"]].concat())?;
        if prest.len() != 1 {
            return Err(Error::parse(pline, "expected `player <1|2>`"));
        }
        let tag: u8 = parse_num(pline, prest[0], "player tag")?;
        let player = Player::from_tag(tag)
            .ok_or_else(|| Error::parse(pline, "player tag must be 1 or 2"))?;
        let (iline, irest) = self.keyword_line(&[prefix, &["init"]].concat())?;
        if irest.len() != self.n {
            return Err(Error::parse(iline, format!("expected {} init values", self.n)));
        }
        let mut init_memory = Vec::with_capacity(self.n);
        for t in &irest {
            init_memory.push(parse_num::<u16>(iline, t, "initial memory")?);
        }
        let mut advance = Vec::with_capacity(k);
        for m in 0..k {
            let mstr = m.to_string();
            let set = self.set_line(&[prefix, &["advance", &mstr]].concat())?;
            advance.push(set);
        }
        let mut moves = Vec::with_capacity(k);
        for m in 0..k {
            let mstr = m.to_string();
            let pairs = self.pairs_line(&[prefix, &["moves", &mstr]].concat())?;
            let mut table = vec![NO_VERTEX; self.n];
            for (v, mv) in pairs {
                table[v as usize] = mv;
            }
            moves.push(table);
        }
        Ok(P1GenBuchiStrategy {
            player,
            region: region.clone(),
            k,
            init_memory,
            advance,
            moves,
        })
    }
}

/// Parses a result file; `n` is the vertex count of the accompanying game.
pub fn parse_result(text: &str, n: usize) -> Result<ResultFile, Error> {
    let mut rr = ResultReader {
        r: Reader::new(text),
        n,
    };
    let (hline, header) = rr.r.expect("result header")?;
    if header != ["ggr", "1"] {
        return Err(Error::parse(hline, "expected header `ggr 1`"));
    }
    let (kline, ktok) = rr.keyword_line(&["kind"])?;
    if ktok.len() != 1 {
        return Err(Error::parse(kline, "expected `kind gbg` or `kind gr1`"));
    }
    let is_gr1 = match ktok[0] {
        "gbg" => false,
        "gr1" => true,
        other => return Err(Error::parse(kline, format!("unknown result kind `{other}`"))),
    };
    let w1 = rr.set_line(&["w1"])?;
    let w2 = rr.set_line(&["w2"])?;

    if !is_gr1 {
        let strategy = rr.strategy_block(&["strategy"], &w1)?;
        let (cline, crest) = rr.keyword_line(&["certificate", "records"])?;
        if crest.len() != 1 {
            return Err(Error::parse(cline, "expected record count"));
        }
        let count: usize = parse_num(cline, crest[0], "record count")?;
        let mut records = Vec::with_capacity(count);
        for i in 0..count {
            let istr = i.to_string();
            let (wline, wrest) = rr.keyword_line(&["record", &istr, "witness"])?;
            if wrest.len() != 3 || wrest[1] != "level" {
                return Err(Error::parse(wline, "expected `witness <l> level <i|->`"));
            }
            let witness: usize = parse_num(wline, wrest[0], "witness index")?;
            let level = match wrest[2] {
                "-" => None,
                t => Some(parse_num::<u32>(wline, t, "level")?),
            };
            let s_set = rr.set_line(&["record", &istr, "s"])?;
            let d_set = rr.set_line(&["record", &istr, "d"])?;
            let stay = rr.pairs_line(&["record", &istr, "stay"])?;
            let attr = rr.pairs_line(&["record", &istr, "attr"])?;
            records.push(P2CertRecord {
                witness,
                level,
                s_set,
                d_set,
                stay,
                attr,
            });
        }
        Ok(ResultFile::GenBuchi {
            strategy,
            certificate: P2GenBuchiCertificate {
                player: Player::P1,
                claimed_w2: w2.clone(),
                records,
            },
            w1,
            w2,
        })
    } else {
        let (kline, krest) = rr.keyword_line(&["strategy", "k2"])?;
        if krest.len() != 1 {
            return Err(Error::parse(kline, "expected `strategy k2 <count>`"));
        }
        let k2: usize = parse_num(kline, krest[0], "phase count")?;
        if k2 == 0 {
            return Err(Error::parse(kline, "strategy needs at least one phase"));
        }
        let mut advance = Vec::with_capacity(k2);
        for c in 0..k2 {
            let cstr = c.to_string();
            advance.push(rr.set_line(&["strategy", "advance", &cstr])?);
        }
        let mut moves = Vec::with_capacity(k2);
        for c in 0..k2 {
            let cstr = c.to_string();
            let pairs = rr.pairs_line(&["strategy", "moves", &cstr])?;
            let mut table = vec![NO_VERTEX; n];
            for (v, mv) in pairs {
                table[v as usize] = mv;
            }
            moves.push(table);
        }
        let strategy = P1Gr1Strategy {
            region: w1.clone(),
            k2,
            advance,
            moves,
        };
        let (cline, crest) = rr.keyword_line(&["certificate", "records"])?;
        if crest.len() != 1 {
            return Err(Error::parse(cline, "expected record count"));
        }
        let count: usize = parse_num(cline, crest[0], "record count")?;
        let mut records = Vec::with_capacity(count);
        for i in 0..count {
            let istr = i.to_string();
            let (wline, wrest) = rr.keyword_line(&["record", &istr, "witness"])?;
            if wrest.len() < 2 || wrest[1] != "source" {
                return Err(Error::parse(wline, "expected `witness <l> source <small i|large>`"));
            }
            let witness: usize = parse_num(wline, wrest[0], "witness index")?;
            let source = match wrest.get(2) {
                Some(&"large") if wrest.len() == 3 => DominionSource::Large,
                Some(&"small") if wrest.len() == 4 => DominionSource::Small {
                    level: parse_num(wline, wrest[3], "level")?,
                },
                _ => return Err(Error::parse(wline, "source must be `small <i>` or `large`")),
            };
            let s_set = rr.set_line(&["record", &istr, "s"])?;
            let d_set = rr.set_line(&["record", &istr, "d"])?;
            let attr = rr.pairs_line(&["record", &istr, "attr"])?;
            let inner = rr.strategy_block(&["record", &istr, "inner"], &s_set)?;
            records.push(Gr1CertRecord {
                witness_guarantee: witness,
                source,
                s_set,
                d_set,
                inner,
                attr,
            });
        }
        Ok(ResultFile::Gr1 {
            strategy,
            certificate: Gr1Certificate {
                claimed_w2: w2.clone(),
                records,
            },
            w1,
            w2,
        })
    }
}
