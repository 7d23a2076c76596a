use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tracing::warn;

use crate::error::{Error, Result};
use crate::model::RepoRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LicenseClass {
    Permissive,
    Copyleft,
    CustomReview,
    Unknown,
}

impl LicenseClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LicenseClass::Permissive => "permissive",
            LicenseClass::Copyleft => "copyleft",
            LicenseClass::CustomReview => "custom_review",
            LicenseClass::Unknown => "unknown",
        }
    }
}

pub const NO_LICENSE: &str = "none";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LicenseRecord {
    pub repo: String,
    pub license_id: String,
    pub classification: LicenseClass,
}

const PERMISSIVE_EXACT: &[&str] = &[
    "mit", "mit-0", "isc", "bsl-1.0", "unlicense", "cc0-1.0", "0bsd", "zlib", "wtfpl", "python-2.0",
    "psf-2.0", "ncsa", "x11", "upl-1.0", "mit license", "the unlicense", "boost software license 1.0",
];
const PERMISSIVE_PREFIX: &[&str] = &["bsd", "apache", "afl-", "public domain", "public-domain"];
const COPYLEFT_PREFIX: &[&str] = &[
    "gpl", "lgpl", "agpl", "gnu ", "mulan", "epl-", "eclipse", "cc-by", "cc by", "creative commons",
    "mpl-", "mozilla", "eupl", "osl-", "cecill",
];

/// Classifies a host-reported license identifier or name.
pub fn classify_license(license_id: Option<&str>) -> LicenseClass {
    let Some(id) = license_id.map(str::trim).filter(|s| !s.is_empty() && !s.eq_ignore_ascii_case(NO_LICENSE)) else {
        return LicenseClass::Unknown;
    };
    let id = id.to_ascii_lowercase();
    if PERMISSIVE_EXACT.contains(&id.as_str()) || PERMISSIVE_PREFIX.iter().any(|p| id.starts_with(p)) {
        LicenseClass::Permissive
    } else if COPYLEFT_PREFIX.iter().any(|p| id.starts_with(p)) {
        LicenseClass::Copyleft
    } else {
        LicenseClass::CustomReview
    }
}

/// One record per repository in input order. Unlicensed repositories are
/// flagged for review and assumed usable for academic purposes.
pub fn audit_licenses(repos: &[RepoRef]) -> Vec<LicenseRecord> {
    repos
        .iter()
        .map(|r| {
            let classification = classify_license(r.license_id.as_deref());
            if classification == LicenseClass::Unknown {
                warn!(repo = %r.key(), "no license information; assume permissive for academic use");
            }
            LicenseRecord {
                repo: r.key(),
                license_id: match classification {
                    LicenseClass::Unknown => NO_LICENSE.to_string(),
                    _ => r.license_id.clone().unwrap_or_default().trim().to_string(),
                },
                classification,
            }
        })
        .collect()
}

/// Per-license repository counts, most frequent first.
pub fn license_summary(records: &[LicenseRecord]) -> Vec<(String, LicenseClass, usize)> {
    let mut counts: BTreeMap<(String, LicenseClass), usize> = BTreeMap::new();
    for r in records {
        *counts.entry((r.license_id.clone(), r.classification)).or_default() += 1;
    }
    let mut rows: Vec<_> = counts.into_iter().map(|((id, class), n)| (id, class, n)).collect();
    rows.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
    rows
}

/// Records needing a human look: custom licenses and unlicensed repositories.
pub fn review_list(records: &[LicenseRecord]) -> Vec<&LicenseRecord> {
    records
        .iter()
        .filter(|r| matches!(r.classification, LicenseClass::CustomReview | LicenseClass::Unknown))
        .collect()
}

pub fn write_licenses_csv(path: &Path, records: &[LicenseRecord]) -> Result<()> {
    let csv_err = |e: csv::Error| Error::io(format!("write {}", path.display()), std::io::Error::other(e));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["repo", "license", "classification"]).map_err(csv_err)?;
    for r in records {
        w.write_record([r.repo.as_str(), r.license_id.as_str(), r.classification.as_str()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(format!("flush {}", path.display()), e))
}
