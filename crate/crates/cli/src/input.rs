//! Resolving command-line algebra descriptors: built-in names, JSON files,
//! and window flags.

use std::path::Path;

use cpa_core::constructions::{builtin, kac_moody_window, loop_window, witt_window, AlgebraWindow, Builtin};
use cpa_core::format::{algebra_from_json, ParsedAlgebra};
use cpa_core::grading::{GradedLieAlgebra, Grading};
use cpa_core::LieAlgebra;

use crate::{Failure, Target};

/// Default half-width of loop and Kac-Moody windows.
pub const DEFAULT_LOOP_WINDOW: usize = 3;

pub enum Resolved {
    Finite(LieAlgebra),
    Window(AlgebraWindow),
}

/// A built-in name or a path to a JSON algebra file.
pub fn load(descriptor: &str) -> Result<ParsedAlgebra, Failure> {
    match builtin(descriptor) {
        Ok(Builtin::Plain(l)) => return Ok(ParsedAlgebra::Plain(l)),
        Ok(Builtin::Graded(g)) => return Ok(ParsedAlgebra::Graded(g)),
        Err(_) if !Path::new(descriptor).exists() => {
            return Err(Failure::invalid(format!(
                "{descriptor:?} is neither a built-in algebra nor a readable file"
            )))
        }
        Err(_) => {}
    }
    let text = std::fs::read_to_string(descriptor).map_err(|e| Failure::invalid(format!("{descriptor}: {e}")))?;
    algebra_from_json(&text).map_err(|e| Failure::invalid(format!("{descriptor}: {e}")))
}

pub fn load_algebra(descriptor: &str) -> Result<LieAlgebra, Failure> {
    Ok(load(descriptor)?.algebra().clone())
}

/// The attached grading, or the trivial one.
pub fn load_graded(descriptor: &str) -> Result<GradedLieAlgebra, Failure> {
    Ok(match load(descriptor)? {
        ParsedAlgebra::Graded(g) => g,
        ParsedAlgebra::Plain(l) => {
            let n = l.dim();
            GradedLieAlgebra {
                algebra: l,
                grading: Grading::trivial(n),
            }
        }
    })
}

pub fn resolve(target: &Target, window: Option<usize>) -> Result<Resolved, Failure> {
    if let Some(n) = target.witt {
        if target.algebra.is_some() || target.loop_window || target.kac_moody {
            return Err(Failure::invalid("--witt takes no algebra and excludes --loop/--kac-moody"));
        }
        let w = witt_window(n, target.one_sided).map_err(|e| Failure::invalid(e.to_string()))?;
        return Ok(Resolved::Window(w));
    }
    let Some(descriptor) = target.algebra.as_deref() else {
        return Err(Failure::invalid("an algebra (built-in name or JSON file) is required"));
    };
    if target.loop_window && target.kac_moody {
        return Err(Failure::invalid("--loop and --kac-moody are exclusive"));
    }
    if target.loop_window || target.kac_moody {
        let g = load_graded(descriptor)?;
        let n = window.unwrap_or(DEFAULT_LOOP_WINDOW);
        let w = if target.kac_moody { kac_moody_window(&g, n) } else { loop_window(&g, n) };
        return Ok(Resolved::Window(w.map_err(|e| Failure::invalid(e.to_string()))?));
    }
    Ok(Resolved::Finite(load_algebra(descriptor)?))
}
