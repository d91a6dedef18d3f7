use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use termbase_core::ddl::{emit_ddl, map_schema};
use termbase_core::er::ErInstance;
use termbase_core::rdf::{to_ntriples, IriScheme};
use termbase_core::store::{from_store_str, to_store_string};
use termbase_core::tbx::{export_tbx_with, import_tbx, TbxOptions};
use termbase_core::termmodel::{terminology_schema, validate_termbase, view as project, Approach};

use crate::{ExitStatus, InFormat, OutFormat};

pub struct ConvertArgs {
    pub input: PathBuf,
    pub output: PathBuf,
    pub in_format: InFormat,
    pub out_format: OutFormat,
    pub base: Option<String>,
    pub title: String,
    pub force: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_store(path: &Path) -> Result<ErInstance> {
    let text = read(path)?;
    from_store_str(&text, terminology_schema()).with_context(|| format!("cannot load {}", path.display()))
}

fn write_output(path: &Path, data: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(data.as_bytes())?;
        out.flush()?;
        Ok(())
    } else {
        fs::write(path, data).with_context(|| format!("cannot write {}", path.display()))
    }
}

pub fn validate(store: &Path) -> Result<ExitStatus> {
    let instance = load_store(store)?;
    let report = validate_termbase(&instance)?;
    let mut out = io::stdout().lock();
    if report.is_empty() {
        writeln!(out, "OK: 0 violations")?;
        return Ok(ExitStatus::Success);
    }
    write!(out, "{report}")?;
    writeln!(out, "FAIL: {} violations", report.len())?;
    Ok(ExitStatus::Violations)
}

pub fn convert(args: &ConvertArgs) -> Result<ExitStatus> {
    let scheme = match (args.out_format, &args.base) {
        (OutFormat::Ntriples, None) => bail!("--base is required for ntriples output"),
        (OutFormat::Ntriples, Some(base)) => Some(IriScheme::new(base)?),
        _ => None,
    };

    let text = read(&args.input)?;
    let instance = match args.in_format {
        InFormat::Store => from_store_str(&text, terminology_schema())
            .with_context(|| format!("cannot load {}", args.input.display()))?,
        InFormat::Tbx => {
            import_tbx(&text).with_context(|| format!("cannot import {}", args.input.display()))?
        }
    };

    let mut status = ExitStatus::Success;
    let data = match args.out_format {
        OutFormat::Store => to_store_string(&instance),
        OutFormat::Tbx => {
            let export = export_tbx_with(
                &instance,
                &TbxOptions {
                    title: args.title.clone(),
                    force: args.force,
                },
            )?;
            if !export.loss.is_empty() {
                eprintln!("TBX export dropped {} item(s):", export.loss.total());
                eprint!("{}", export.loss);
            }
            if export.forced {
                eprintln!("warning: exported despite conditional violations (--force)");
                status = ExitStatus::Violations;
            }
            export.xml
        }
        OutFormat::Ntriples => to_ntriples(&instance, scheme.as_ref().expect("checked above"))?,
        OutFormat::Ddl => emit_ddl(&map_schema(instance.schema())?),
    };
    write_output(&args.output, &data)?;
    Ok(status)
}

pub fn view(store: &Path, approach: Approach) -> Result<ExitStatus> {
    let instance = load_store(store)?;
    let projection = project(&instance, approach)?;
    write_output(Path::new("-"), &to_store_string(&projection.instance))?;
    Ok(ExitStatus::Success)
}

pub fn stats(store: &Path) -> Result<ExitStatus> {
    let instance = load_store(store)?;
    let schema = instance.schema();
    let mut entities: Vec<(&str, usize)> = schema
        .entity_types
        .iter()
        .map(|t| (t.name.as_str(), instance.entities_of(&t.name).count()))
        .collect();
    entities.sort();
    let mut links: Vec<(&str, usize)> = schema
        .associations
        .iter()
        .map(|a| (a.name.as_str(), instance.links_of(&a.name).count()))
        .collect();
    links.sort();

    let mut out = io::stdout().lock();
    writeln!(out, "kind\tname\tcount")?;
    for (name, n) in entities {
        writeln!(out, "entity\t{name}\t{n}")?;
    }
    for (name, n) in links {
        writeln!(out, "association\t{name}\t{n}")?;
    }
    Ok(ExitStatus::Success)
}
