use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use asz::cli::{EXIT_INTERNAL, EXIT_INVALID, EXIT_IO, EXIT_ORACLE_LIMIT};
use asz::Error;

/// Status code returned by every fallible function. The first five values
/// match the `asz` command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AszStatus {
    Ok = 0,
    InvalidInstance = 1,
    Io = 2,
    Internal = 3,
    OracleLimit = 4,
    NullPointer = 5,
    InvalidArgument = 6,
}

impl From<&Error> for AszStatus {
    fn from(e: &Error) -> Self {
        match asz::cli::exit_code(e) {
            EXIT_INVALID => AszStatus::InvalidInstance,
            EXIT_IO => AszStatus::Io,
            EXIT_ORACLE_LIMIT => AszStatus::OracleLimit,
            EXIT_INTERNAL => AszStatus::Internal,
            _ => AszStatus::Internal,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

pub(crate) fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

pub(crate) fn last_error_ptr() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

pub(crate) enum FfiError {
    Core(Error),
    Status(AszStatus, String),
}

impl From<Error> for FfiError {
    fn from(e: Error) -> Self {
        FfiError::Core(e)
    }
}

pub(crate) fn null_pointer(name: &str) -> FfiError {
    FfiError::Status(AszStatus::NullPointer, format!("{name} is null"))
}

/// Runs `f`, recording any error or panic as the thread's last error.
pub(crate) fn catch_error<F>(f: F) -> AszStatus
where
    F: FnOnce() -> Result<(), FfiError> + UnwindSafe,
{
    clear_last_error();
    match catch_unwind(f) {
        Ok(Ok(())) => AszStatus::Ok,
        Ok(Err(FfiError::Core(e))) => {
            set_last_error(e.to_string());
            AszStatus::from(&e)
        }
        Ok(Err(FfiError::Status(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside asz");
            AszStatus::Internal
        }
    }
}
