//! Line-oriented prompts: the question goes to `out` (stderr for the
//! binary), the answer is one line of `input`. Values supplied as flags
//! skip their prompt.

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::CliError;

pub const MODULE: &str = "Module (default: S_2):";
pub const SAVE_DIR: &str = "Module save directory (optional):";
pub const MAX_N: &str = "Max n (default: 30):";
pub const MAX_S: &str = "Max s (default: 15):";
pub const PRODUCT_NAME: &str = "Name of product:";
pub const INPUT_CLASS: &str = "Input ext class:";
pub const MASSEY_BANNER: [&str; 2] = [
    "We are going to compute <-, b, a> for all (-), where a is an",
    "element in Ext(M, k) and b and (-) are elements in Ext(k, k).",
];

pub struct Prompter<R, W> {
    input: R,
    out: W,
}

impl<R: BufRead, W: Write> Prompter<R, W> {
    pub fn new(input: R, out: W) -> Self {
        Self { input, out }
    }

    pub fn say(&mut self, line: &str) -> Result<(), CliError> {
        writeln!(self.out, "{line}").map_err(CliError::io("<prompt>"))
    }

    /// The answer to `prompt`, trimmed; an empty answer or end of input
    /// gives `default`, and end of input without a default is an error.
    pub fn ask(&mut self, prompt: &str, default: Option<&str>) -> Result<String, CliError> {
        write!(self.out, "{prompt} ").and_then(|_| self.out.flush()).map_err(CliError::io("<prompt>"))?;
        let mut line = String::new();
        let read = self.input.read_line(&mut line).map_err(CliError::io("<stdin>"))?;
        let answer = line.trim();
        if read == 0 {
            writeln!(self.out).map_err(CliError::io("<prompt>"))?;
        }
        match (answer.is_empty(), default) {
            (false, _) => Ok(answer.to_string()),
            (true, Some(d)) => Ok(d.to_string()),
            (true, None) if read == 0 => Err(CliError::Usage(format!("no answer to {prompt:?}"))),
            (true, None) => Ok(String::new()),
        }
    }

    /// `given` if present, else the parsed answer to `prompt`.
    pub fn value<T: FromStr>(&mut self, given: Option<T>, prompt: &str, default: Option<&str>) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = given {
            return Ok(v);
        }
        let answer = self.ask(prompt, default)?;
        answer.parse().map_err(|e| CliError::Usage(format!("{prompt} {answer:?}: {e}")))
    }
}
