//! Placement, XOR delivery and decoding for the coded caching scheme a PDA
//! induces. User `k` caches packet `j` of every file when `p[j][k] = *`;
//! symbol `s` is broadcast as the XOR of the packets `(d_k, j)` over the
//! cells `(j, k)` carrying `s`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::pda::{Entry, Pda, PdaParams, PdaViolation};

pub const DEFAULT_PACKET_SIZE: usize = 16;
pub const DEFAULT_SEED: u64 = 1;
/// Largest demand space swept exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("refusing to simulate an invalid PDA: {0}")]
    Invalid(#[from] PdaViolation),
    #[error("{0}")]
    Shape(String),
    #[error("demand {demand:?} is out of range for {files} files")]
    Demand { demand: Vec<usize>, files: usize },
    #[error("user {user} cannot peel row {row}: side packet (row {side_row}, column {side_col}) is not cached (C3 fails)")]
    MissingSidePacket { user: usize, row: usize, side_row: usize, side_col: usize },
    #[error("user {user} has no cached copy of packet {row} although its cell is a star")]
    MissingCached { user: usize, row: usize },
    #[error("exhaustive mode needs N^K = {files}^{users} ≤ {EXHAUSTIVE_LIMIT} demands")]
    TooManyDemands { files: usize, users: usize },
}

/// `N` files of `F` packets, each `packet_size` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileLibrary {
    n: usize,
    f: usize,
    packet_size: usize,
    packets: Vec<Vec<u8>>,
}

impl FileLibrary {
    /// Payloads drawn from a ChaCha stream seeded with `seed`.
    pub fn random(n: usize, f: usize, packet_size: usize, seed: u64) -> Result<Self, SimError> {
        if n == 0 || f == 0 || packet_size == 0 {
            return Err(SimError::Shape(format!(
                "library needs N, F, packet size ≥ 1, got {n}, {f}, {packet_size}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let packets = (0..n * f)
            .map(|_| {
                let mut buf = vec![0u8; packet_size];
                rng.fill_bytes(&mut buf);
                buf
            })
            .collect();
        Ok(Self { n, f, packet_size, packets })
    }

    /// Packets listed file by file.
    pub fn from_packets(n: usize, f: usize, packets: Vec<Vec<u8>>) -> Result<Self, SimError> {
        let packet_size = packets.first().map_or(0, Vec::len);
        if n == 0 || f == 0 || packets.len() != n * f || packet_size == 0 {
            return Err(SimError::Shape(format!("expected {n}·{f} nonempty packets, got {}", packets.len())));
        }
        if packets.iter().any(|p| p.len() != packet_size) {
            return Err(SimError::Shape("packets differ in length".into()));
        }
        Ok(Self { n, f, packet_size, packets })
    }

    pub fn files(&self) -> usize {
        self.n
    }

    pub fn packets_per_file(&self) -> usize {
        self.f
    }

    pub fn packet_size(&self) -> usize {
        self.packet_size
    }

    pub fn packet(&self, file: usize, row: usize) -> &[u8] {
        &self.packets[file * self.f + row]
    }

    /// The file's packets concatenated.
    pub fn file(&self, file: usize) -> Vec<u8> {
        self.packets[file * self.f..(file + 1) * self.f].concat()
    }
}

/// What one user stores: packet `(file, row)` for every star row of its
/// column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheContents {
    pub user: usize,
    packets: BTreeMap<(usize, usize), Vec<u8>>,
}

impl CacheContents {
    pub fn get(&self, file: usize, row: usize) -> Option<&[u8]> {
        self.packets.get(&(file, row)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.packets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packets.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.packets.keys().copied()
    }
}

/// One broadcast payload per symbol, in symbol order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmissionLog {
    pub transmissions: Vec<Vec<u8>>,
}

impl TransmissionLog {
    pub fn bytes(&self) -> usize {
        self.transmissions.iter().map(Vec::len).sum()
    }
}

fn xor_into(acc: &mut [u8], other: &[u8]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

fn check_library(p: &Pda, lib: &FileLibrary) -> Result<(), SimError> {
    p.validate()?;
    if lib.f != p.f() {
        return Err(SimError::Shape(format!("library has F = {} packets per file, PDA has F = {}", lib.f, p.f())));
    }
    Ok(())
}

fn check_demand(p: &Pda, lib: &FileLibrary, demand: &[usize]) -> Result<(), SimError> {
    if demand.len() != p.k() || demand.iter().any(|&d| d >= lib.n) {
        return Err(SimError::Demand { demand: demand.to_vec(), files: lib.n });
    }
    Ok(())
}

pub fn place(p: &Pda, lib: &FileLibrary) -> Result<Vec<CacheContents>, SimError> {
    check_library(p, lib)?;
    Ok((0..p.k())
        .map(|user| {
            let packets = (0..p.f())
                .filter(|&j| p.get(j, user).is_star())
                .flat_map(|j| (0..lib.n).map(move |file| ((file, j), lib.packet(file, j).to_vec())))
                .collect();
            CacheContents { user, packets }
        })
        .collect())
}

pub fn deliver(p: &Pda, lib: &FileLibrary, demand: &[usize]) -> Result<TransmissionLog, SimError> {
    check_library(p, lib)?;
    check_demand(p, lib, demand)?;
    Ok(transmit(&p.cells_by_symbol(), lib, demand))
}

fn transmit(cells: &[Vec<(usize, usize)>], lib: &FileLibrary, demand: &[usize]) -> TransmissionLog {
    let transmissions = cells
        .iter()
        .map(|group| {
            let mut acc = vec![0u8; lib.packet_size];
            for &(j, k) in group {
                xor_into(&mut acc, lib.packet(demand[k], j));
            }
            acc
        })
        .collect();
    TransmissionLog { transmissions }
}

/// Rebuilds file `demand[user]` from the user's cache and the broadcast.
pub fn decode(
    p: &Pda,
    cache: &CacheContents,
    log: &TransmissionLog,
    demand: &[usize],
    user: usize,
) -> Result<Vec<u8>, SimError> {
    p.validate()?;
    if log.transmissions.len() != p.s() {
        return Err(SimError::Shape(format!("{} transmissions for S = {}", log.transmissions.len(), p.s())));
    }
    if demand.len() != p.k() || user >= p.k() {
        return Err(SimError::Shape(format!("user {user} or demand length {} does not fit K = {}", demand.len(), p.k())));
    }
    decode_with(p, &p.cells_by_symbol(), cache, log, demand, user)
}

fn decode_with(
    p: &Pda,
    cells: &[Vec<(usize, usize)>],
    cache: &CacheContents,
    log: &TransmissionLog,
    demand: &[usize],
    user: usize,
) -> Result<Vec<u8>, SimError> {
    let want = demand[user];
    let mut out = Vec::new();
    for row in 0..p.f() {
        match p.get(row, user) {
            Entry::Star => {
                let packet = cache.get(want, row).ok_or(SimError::MissingCached { user, row })?;
                out.extend_from_slice(packet);
            }
            Entry::Symbol(s) => {
                let s = s as usize - 1;
                let mut acc = log.transmissions[s].clone();
                for &(j, k) in &cells[s] {
                    if (j, k) == (row, user) {
                        continue;
                    }
                    let side = cache
                        .get(demand[k], j)
                        .ok_or(SimError::MissingSidePacket { user, row, side_row: j, side_col: k })?;
                    xor_into(&mut acc, side);
                }
                out.extend_from_slice(&acc);
            }
        }
    }
    Ok(out)
}

/// How demand vectors are chosen for [`verify_scheme`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// All `N^K` demands; refused beyond [`EXHAUSTIVE_LIMIT`].
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
    /// All-same demands for each file, round-robin, and all-distinct
    /// demands when `N ≥ K`.
    Adversarial,
    /// Exhaustive when the demand space is small enough, otherwise sampled
    /// plus adversarial.
    Auto { samples: usize, seed: u64 },
}

impl VerifyMode {
    pub fn name(&self) -> &'static str {
        match self {
            VerifyMode::Exhaustive => "exhaustive",
            VerifyMode::Sampled { .. } => "sampled",
            VerifyMode::Adversarial => "adversarial",
            VerifyMode::Auto { .. } => "auto",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeFailure {
    pub demand: Vec<usize>,
    pub user: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pda: PdaParams,
    pub files: usize,
    pub mode: String,
    pub demands_tested: usize,
    pub failures: Vec<DecodeFailure>,
    /// Transmissions per demand over `F`, as an exact fraction.
    pub rate: String,
    /// Bytes broadcast per demand.
    pub bytes: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn demand_space(n: usize, k: usize) -> Option<u64> {
    (n as u64).checked_pow(u32::try_from(k).ok()?).filter(|&c| c <= EXHAUSTIVE_LIMIT)
}

fn exhaustive(n: usize, k: usize) -> Result<Vec<Vec<usize>>, SimError> {
    let count = demand_space(n, k).ok_or(SimError::TooManyDemands { files: n, users: k })?;
    Ok((0..count)
        .map(|mut i| {
            (0..k)
                .map(|_| {
                    let d = (i % n as u64) as usize;
                    i /= n as u64;
                    d
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect()
        })
        .collect())
}

fn adversarial(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i; k]).collect();
    out.push((0..k).map(|u| u % n).collect());
    if n >= k {
        out.push((0..k).map(|u| n - 1 - u).collect());
    }
    out
}

fn sampled(n: usize, k: usize, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (0..k).map(|_| rng.random_range(0..n)).collect()).collect()
}

fn demands(n: usize, k: usize, mode: VerifyMode) -> Result<Vec<Vec<usize>>, SimError> {
    let mut list = match mode {
        VerifyMode::Exhaustive => exhaustive(n, k)?,
        VerifyMode::Sampled { samples, seed } => sampled(n, k, samples, seed),
        VerifyMode::Adversarial => adversarial(n, k),
        VerifyMode::Auto { samples, seed } => match demand_space(n, k) {
            Some(_) => exhaustive(n, k)?,
            None => [sampled(n, k, samples, seed), adversarial(n, k)].concat(),
        },
    };
    if !matches!(mode, VerifyMode::Sampled { .. }) {
        list.sort();
        list.dedup();
    }
    Ok(list)
}

/// Runs place, deliver and decode for every demand the mode selects and
/// checks each user's reconstruction byte for byte.
pub fn verify_scheme(p: &Pda, lib: &FileLibrary, mode: VerifyMode) -> Result<VerificationReport, SimError> {
    check_library(p, lib)?;
    let list = demands(lib.n, p.k(), mode)?;
    let caches = place(p, lib)?;
    let cells = p.cells_by_symbol();
    let mut failures: Vec<DecodeFailure> = list
        .par_iter()
        .flat_map_iter(|demand| {
            let log = transmit(&cells, lib, demand);
            let mut bad = Vec::new();
            if log.transmissions.len() != p.s() || log.transmissions.iter().any(|t| t.len() != lib.packet_size) {
                bad.push(DecodeFailure { demand: demand.clone(), user: 0, reason: "malformed broadcast".into() });
            }
            for user in 0..p.k() {
                let reason = match decode_with(p, &cells, &caches[user], &log, demand, user) {
                    Ok(bytes) if bytes == lib.file(demand[user]) => continue,
                    Ok(_) => "reconstruction differs from the demanded file".to_string(),
                    Err(e) => e.to_string(),
                };
                bad.push(DecodeFailure { demand: demand.clone(), user, reason });
            }
            bad
        })
        .collect();
    failures.sort_by(|a, b| (&a.demand, a.user).cmp(&(&b.demand, b.user)));
    Ok(VerificationReport {
        pda: p.params(),
        files: lib.n,
        mode: mode.name().into(),
        demands_tested: list.len(),
        failures,
        rate: BigRational::new(p.s().into(), p.f().into()).to_string(),
        bytes: p.s() * lib.packet_size,
    })
}

/// [`verify_scheme`] with `N = min(K, 4)` files of random 16-byte packets.
pub fn verify_default(p: &Pda, mode: VerifyMode) -> Result<VerificationReport, SimError> {
    let lib = FileLibrary::random(p.k().min(4), p.f(), DEFAULT_PACKET_SIZE, DEFAULT_SEED)?;
    verify_scheme(p, &lib, mode)
}
