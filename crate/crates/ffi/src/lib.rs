//! C ABI for abdukit.
//!
//! Programs live behind the opaque `AbkProgram` handle. Every operation
//! returns an `AbkStatus`; results come back as JSON strings that the caller
//! releases with `abk_string_free`. After a non-zero status,
//! `abk_last_error` describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abdukit::abduction::{self, AbductiveProgram, Mode, Observation};
use abdukit::parser::{self, SourceUnit};
use abdukit::report::{AnswerSetsDoc, SolutionDoc, SolutionsDoc};
use abdukit::updates::{self, RepairScope, UpdateSolution};
use abdukit::{solver, AbdEncoding, EngineConfig, Error, Literal};
use libc::c_char;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    /// No constants, or too many ground rules.
    Grounding = 4,
    /// A search or oracle limit was hit.
    Budget = 5,
    /// The input violates a precondition of the operation.
    InvalidInput = 6,
    /// The update program itself is inconsistent.
    InconsistentUpdate = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbkEncoding {
    NafPair = 0,
    DisjunctiveFact = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbkObservation {
    Positive = 0,
    Negative = 1,
    /// Restore consistency; the literal argument is ignored.
    Bot = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbkMode {
    Credulous = 0,
    Skeptical = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbkScope {
    AllRules = 0,
    /// The `#variable` rules of the program.
    Variables = 1,
    FactUniverse = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbkConfig {
    pub max_ground_rules: usize,
    pub max_universe: usize,
    pub encoding: AbkEncoding,
}

/// A parsed input: program, abducibles and `#variable` rules.
pub struct AbkProgram {
    unit: SourceUnit,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(AbkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::ReservedName { .. } => AbkStatus::Syntax,
            Error::NoConstants | Error::GroundingBudgetExceeded { .. } => AbkStatus::Grounding,
            Error::CandidateBudgetExceeded { .. } | Error::OracleBudgetExceeded { .. } => AbkStatus::Budget,
            Error::InconsistentUpdate => AbkStatus::InconsistentUpdate,
            _ => AbkStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AbkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            AbkStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal error".into()));
            AbkStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(AbkStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AbkStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn unit_of<'a>(p: *const AbkProgram) -> Result<&'a SourceUnit, Failure> {
    p.as_ref()
        .map(|h| &h.unit)
        .ok_or_else(|| Failure(AbkStatus::NullArgument, "null program handle".into()))
}

unsafe fn engine_config(c: *const AbkConfig) -> EngineConfig {
    let mut cfg = EngineConfig::default();
    if let Some(c) = c.as_ref() {
        cfg.max_ground_rules = c.max_ground_rules;
        cfg.max_universe = c.max_universe;
        cfg.encoding = match c.encoding {
            AbkEncoding::NafPair => AbdEncoding::NafPair,
            AbkEncoding::DisjunctiveFact => AbdEncoding::DisjunctiveFact,
        };
    }
    cfg
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(AbkStatus::NullArgument, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|e| Failure(AbkStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("documents always serialize")
}

fn solutions(list: &[UpdateSolution]) -> String {
    json(&SolutionsDoc { solutions: list.iter().map(SolutionDoc::from).collect(), trace: None })
}

fn ground_literal(s: &str) -> Result<Literal, Failure> {
    let l = parser::parse_literal(s)?;
    if !l.is_ground() {
        return Err(Error::NonGroundObservation(l.to_string()).into());
    }
    Ok(l)
}

/// Defaults used when a null config is passed.
#[no_mangle]
pub extern "C" fn abk_config_default() -> AbkConfig {
    let d = EngineConfig::default();
    AbkConfig {
        max_ground_rules: d.max_ground_rules,
        max_universe: d.max_universe,
        encoding: AbkEncoding::NafPair,
    }
}

/// Parses `source` into a new handle stored in `*out`.
///
/// # Safety
/// `source` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abk_program_parse(source: *const c_char, out: *mut *mut AbkProgram) -> AbkStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(AbkStatus::NullArgument, "null output pointer".into()));
        }
        let unit = parser::parse(text(source)?)?;
        *out = Box::into_raw(Box::new(AbkProgram { unit }));
        Ok(())
    })
}

/// # Safety
/// `program` must come from `abk_program_parse` and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn abk_program_free(program: *mut AbkProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Canonical source text of the handle.
///
/// # Safety
/// `program` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abk_program_render(program: *const AbkProgram, out: *mut *mut c_char) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        write_out(out, parser::render(unit))
    })
}

/// Answer sets as `{"answer_sets": [...], "contradictory": bool}`.
///
/// # Safety
/// `program` must be a live handle, `config` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_answer_sets(
    program: *const AbkProgram,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        let r = solver::solve(&unit.program, &engine_config(config))?;
        write_out(out, json(&AnswerSetsDoc::from(&r)))
    })
}

/// (Anti-)explanations of one observation against the `#abducible` rules.
///
/// # Safety
/// `program` must be a live handle; `literal` a nul-terminated string unless
/// `kind` is `Bot`; `config` null or valid; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_explain(
    program: *const AbkProgram,
    kind: AbkObservation,
    literal: *const c_char,
    mode: AbkMode,
    minimal_only: bool,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        let obs = match kind {
            AbkObservation::Positive => Observation::Positive(ground_literal(text(literal)?)?),
            AbkObservation::Negative => Observation::Negative(ground_literal(text(literal)?)?),
            AbkObservation::Bot => Observation::Bot,
        };
        let mode = match mode {
            AbkMode::Credulous => Mode::Credulous,
            AbkMode::Skeptical => Mode::Skeptical,
        };
        let ap = AbductiveProgram::new(unit.program.clone(), unit.abducibles.clone());
        let list = abduction::solve(&ap, &obs, mode, minimal_only, &engine_config(config))?;
        let mut docs = Vec::new();
        for e in &list {
            docs.push(SolutionDoc::new(e, &updates::apply_delta(&ap.program, e)?));
        }
        write_out(out, json(&SolutionsDoc { solutions: docs, trace: None }))
    })
}

/// Inserts (`insert` true) or deletes a ground literal through the
/// `#variable` rules.
///
/// # Safety
/// `program` must be a live handle, `goal` nul-terminated, `config` null or
/// valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_view_update(
    program: *const AbkProgram,
    goal: *const c_char,
    insert: bool,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        let g = ground_literal(text(goal)?)?;
        let cfg = engine_config(config);
        let list = if insert {
            updates::view_insert(&unit.program, &unit.variables, &g, &cfg)?
        } else {
            updates::view_delete(&unit.program, &unit.variables, &g, &cfg)?
        };
        write_out(out, solutions(&list))
    })
}

/// Restores the constraints by changing `#variable` rules only.
///
/// # Safety
/// `program` must be a live handle, `config` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_maintain_integrity(
    program: *const AbkProgram,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        let list = updates::maintain_integrity(&unit.program, &unit.variables, &engine_config(config))?;
        write_out(out, solutions(&list))
    })
}

/// Updates `program` with `update`, keeping all of `update`.
///
/// # Safety
/// Both handles must be live, `config` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_theory_update(
    program: *const AbkProgram,
    update: *const AbkProgram,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let p = unit_of(program)?;
        let q = unit_of(update)?;
        let list = updates::theory_update(&p.program, &q.program, &engine_config(config))?;
        write_out(out, solutions(&list))
    })
}

/// Inserts (`insert` true) or deletes one rule given in source syntax.
///
/// # Safety
/// `program` must be a live handle, `rule` nul-terminated, `config` null or
/// valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_rule_update(
    program: *const AbkProgram,
    rule: *const c_char,
    insert: bool,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        let r = parser::parse_rule(text(rule)?)?;
        let cfg = engine_config(config);
        let list = if insert {
            updates::insert_rule(&unit.program, &r, &cfg)?
        } else {
            updates::delete_rule(&unit.program, &r, &cfg)?
        };
        write_out(out, solutions(&list))
    })
}

/// Maximal consistent repairs within `scope`.
///
/// # Safety
/// `program` must be a live handle, `config` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abk_repair(
    program: *const AbkProgram,
    scope: AbkScope,
    config: *const AbkConfig,
    out: *mut *mut c_char,
) -> AbkStatus {
    guard(|| {
        let unit = unit_of(program)?;
        let scope = match scope {
            AbkScope::AllRules => RepairScope::AllRules,
            AbkScope::Variables => RepairScope::Subset(unit.variables.clone()),
            AbkScope::FactUniverse => RepairScope::FactUniverse,
        };
        let list = updates::remove_inconsistency(&unit.program, &scope, &engine_config(config))?;
        write_out(out, solutions(&list))
    })
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn abk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned through an `out` parameter of this
/// library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn abk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
