//! Reading and writing structure files.
//!
//! A file holds one JSON object whose `kind` field names the structure.
//! Reading accepts any JSON layout; writing always produces the canonical
//! layout: fixed key order, two-space indentation, integer vectors on one
//! line, and one matrix row per line. Reading validates shapes and index
//! ranges but no axioms.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::actions::{ActionFamily, SplitExtension};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidMorphism};
use crate::internal::{InternalGroupoid, InternalMorphism};
use crate::omega::{Identity, OmegaGroup, OmegaMorphism, Signature};
use crate::table::Table;
use crate::xmod::{CrossedModule, XModMorphism};

/// Any structure that can live in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    OmegaGroup {
        group: OmegaGroup,
        identities: Vec<Identity>,
    },
    Action(ActionFamily),
    SplitExtension(SplitExtension),
    CrossedModule(CrossedModule),
    Groupoid(FiniteGroupoid),
    InternalGroupoid(InternalGroupoid),
    XModMorphism(XModMorphism),
    GroupoidMorphism(GroupoidMorphism),
    InternalMorphism(InternalMorphism),
}

impl Structure {
    /// The value of the `kind` field.
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::OmegaGroup { .. } => "omega_group",
            Structure::Action(_) => "action",
            Structure::SplitExtension(_) => "split_extension",
            Structure::CrossedModule(_) => "crossed_module",
            Structure::Groupoid(_) => "groupoid",
            Structure::InternalGroupoid(_) => "internal_groupoid",
            Structure::XModMorphism(_) => "xmod_morphism",
            Structure::GroupoidMorphism(_) | Structure::InternalMorphism(_) => "groupoid_morphism",
        }
    }
}

impl From<OmegaGroup> for Structure {
    fn from(group: OmegaGroup) -> Self {
        Structure::OmegaGroup {
            group,
            identities: Vec::new(),
        }
    }
}

macro_rules! structure_from {
    ($($ty:ident),*) => {
        $(impl From<$ty> for Structure {
            fn from(x: $ty) -> Self {
                Structure::$ty(x)
            }
        })*
    };
}

structure_from!(
    SplitExtension,
    CrossedModule,
    InternalGroupoid,
    XModMorphism,
    GroupoidMorphism,
    InternalMorphism
);

impl From<ActionFamily> for Structure {
    fn from(a: ActionFamily) -> Self {
        Structure::Action(a)
    }
}

impl From<FiniteGroupoid> for Structure {
    fn from(g: FiniteGroupoid) -> Self {
        Structure::Groupoid(g)
    }
}

// ---------------------------------------------------------------- reading

/// Parses a structure file.
pub fn parse(text: &str) -> Result<Structure> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    let rec = Record::new(&value, "")?;
    let s = match rec.kind()? {
        "omega_group" => {
            let group = rec.omega_group_fields()?;
            let identities = match rec.get_opt("identities") {
                None => Vec::new(),
                Some(v) => {
                    let path = rec.child_path("identities");
                    let items = v
                        .as_array()
                        .ok_or_else(|| Error::malformed(format!("{path} must be a list")))?;
                    let mut out = Vec::new();
                    for (i, item) in items.iter().enumerate() {
                        let text = item.as_str().ok_or_else(|| {
                            Error::malformed(format!("{path}[{i}] must be a string"))
                        })?;
                        let id: Identity = text.parse()?;
                        // reject unknown operations now rather than at check time
                        id.lhs.compile(group.signature(), &id.vars)?;
                        id.rhs.compile(group.signature(), &id.vars)?;
                        out.push(id);
                    }
                    out
                }
            };
            rec.finish(&["identities"])?;
            Structure::OmegaGroup { group, identities }
        }
        "action" => Structure::Action(rec.action()?),
        "split_extension" => Structure::SplitExtension(rec.split_extension()?),
        "crossed_module" => Structure::CrossedModule(rec.crossed_module()?),
        "groupoid" => Structure::Groupoid(rec.groupoid()?),
        "internal_groupoid" => Structure::InternalGroupoid(rec.internal_groupoid()?),
        "xmod_morphism" => Structure::XModMorphism(rec.xmod_morphism()?),
        "groupoid_morphism" => rec.groupoid_morphism()?,
        other => return Err(Error::malformed(format!("unknown kind `{other}`"))),
    };
    Ok(s)
}

/// A JSON object being read, remembering its location for messages.
struct Record<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Record<'a> {
    fn new(v: &'a Value, path: &str) -> Result<Self> {
        let map = v.as_object().ok_or_else(|| {
            Error::malformed(format!("{} must be an object", display_path(path)))
        })?;
        Ok(Record {
            map,
            path: path.to_string(),
        })
    }

    fn child_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn get_opt(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }

    fn get(&self, key: &str) -> Result<&'a Value> {
        self.map.get(key).ok_or_else(|| {
            Error::malformed(format!("missing field `{}`", self.child_path(key)))
        })
    }

    fn kind(&self) -> Result<&'a str> {
        self.get("kind")?
            .as_str()
            .ok_or_else(|| Error::malformed(format!("{} must be a string", self.child_path("kind"))))
    }

    fn expect_kind(&self, expected: &str) -> Result<()> {
        let k = self.kind()?;
        if k != expected {
            return Err(Error::malformed(format!(
                "{} should be a `{expected}` record, found `{k}`",
                display_path(&self.path)
            )));
        }
        Ok(())
    }

    /// Rejects fields other than the ones read by this record's kind.
    fn finish(&self, extra: &[&str]) -> Result<()> {
        let allowed = fields_of(self.kind()?);
        for key in self.map.keys() {
            if key != "kind" && !allowed.contains(&key.as_str()) && !extra.contains(&key.as_str()) {
                return Err(Error::malformed(format!(
                    "unexpected field `{}`",
                    self.child_path(key)
                )));
            }
        }
        Ok(())
    }

    fn record(&self, key: &str) -> Result<Record<'a>> {
        Record::new(self.get(key)?, &self.child_path(key))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        as_usize(self.get(key)?, &self.child_path(key))
    }

    fn string(&self, key: &str) -> Result<String> {
        self.get(key)?
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| Error::malformed(format!("{} must be a string", self.child_path(key))))
    }

    fn vector(&self, key: &str) -> Result<Vec<usize>> {
        as_vector(self.get(key)?, &self.child_path(key))
    }

    fn strings(&self, key: &str) -> Result<Vec<String>> {
        let path = self.child_path(key);
        let items = self
            .get(key)?
            .as_array()
            .ok_or_else(|| Error::malformed(format!("{path} must be a list")))?;
        items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::malformed(format!("{path}[{i}] must be a string")))
            })
            .collect()
    }

    fn matrix(&self, key: &str, shape: (usize, usize)) -> Result<Table> {
        as_matrix(self.get(key)?, &self.child_path(key), shape)
    }

    /// Named matrices keyed exactly by `names`.
    fn named_matrices(&self, key: &str, names: &[String], shape: (usize, usize)) -> Result<Vec<Table>> {
        let rec = self.record(key)?;
        check_names(&rec, names)?;
        names.iter().map(|n| rec.matrix(n, shape)).collect()
    }

    fn named_vectors(&self, key: &str, names: &[String]) -> Result<Vec<Vec<usize>>> {
        let rec = self.record(key)?;
        check_names(&rec, names)?;
        names.iter().map(|n| rec.vector(n)).collect()
    }

    fn omega_group_fields(&self) -> Result<OmegaGroup> {
        let sig_rec = self.record("signature")?;
        for key in sig_rec.map.keys() {
            if !["label", "binary", "unary"].contains(&key.as_str()) {
                return Err(Error::malformed(format!(
                    "unexpected field `{}`",
                    sig_rec.child_path(key)
                )));
            }
        }
        let signature = Signature::new(
            sig_rec.string("label")?,
            sig_rec.strings("binary")?,
            sig_rec.strings("unary")?,
        )?;
        let n = self.usize("order")?;
        let add = self.matrix("add", (n, n))?;
        let neg = self.vector("neg")?;
        crate::error::check_len("neg", n, neg.len())?;
        let binary = self.named_matrices("binary", signature.binary_ops(), (n, n))?;
        let unary = self.named_vectors("unary", signature.unary_ops())?;
        OmegaGroup::from_parts(signature, add, neg, binary, unary)
    }

    fn omega_group(&self, key: &str) -> Result<OmegaGroup> {
        let rec = self.record(key)?;
        rec.expect_kind("omega_group")?;
        rec.finish(&[])?;
        rec.omega_group_fields()
    }

    fn action_tables(&self, actor: &OmegaGroup, acted: &OmegaGroup) -> Result<(Table, Vec<Table>, Vec<Table>)> {
        let (nb, na) = (actor.order(), acted.order());
        let names = actor.signature().binary_ops();
        Ok((
            self.matrix("dot", (nb, na))?,
            self.named_matrices("left", names, (nb, na))?,
            self.named_matrices("right", names, (na, nb))?,
        ))
    }

    fn action(&self) -> Result<ActionFamily> {
        self.expect_kind("action")?;
        self.finish(&[])?;
        let actor = self.omega_group("actor")?;
        let acted = self.omega_group("acted")?;
        let (dot, left, right) = self.action_tables(&actor, &acted)?;
        ActionFamily::new(actor, acted, dot, left, right)
    }

    fn split_extension(&self) -> Result<SplitExtension> {
        self.expect_kind("split_extension")?;
        self.finish(&[])?;
        SplitExtension::new(
            self.omega_group("kernel")?,
            self.omega_group("extension")?,
            self.omega_group("base")?,
            self.vector("inclusion")?,
            self.vector("projection")?,
            self.vector("section")?,
        )
    }

    fn crossed_module(&self) -> Result<CrossedModule> {
        self.expect_kind("crossed_module")?;
        self.finish(&[])?;
        let a = self.omega_group("kernel")?;
        let b = self.omega_group("base")?;
        let boundary = OmegaMorphism::new(a.clone(), b.clone(), self.vector("boundary")?)?;
        let (dot, left, right) = self.action_tables(&b, &a)?;
        CrossedModule::new(boundary, ActionFamily::new(b, a, dot, left, right)?)
    }

    fn groupoid(&self) -> Result<FiniteGroupoid> {
        self.expect_kind("groupoid")?;
        self.finish(&[])?;
        let n_obj = self.usize("objects")?;
        let n_mor = self.usize("morphisms")?;
        let d0 = self.vector("d0")?;
        crate::error::check_len("d0", n_mor, d0.len())?;
        let path = self.child_path("compose");
        let rows = self
            .get("compose")?
            .as_array()
            .ok_or_else(|| Error::malformed(format!("{path} must be a list")))?;
        let mut comp = std::collections::BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            let t = as_vector(row, &format!("{path}[{i}]"))?;
            if t.len() != 3 {
                return Err(Error::malformed(format!(
                    "{path}[{i}] must be a triple [a, b, a∘b]"
                )));
            }
            if comp.insert((t[0], t[1]), t[2]).is_some() {
                return Err(Error::malformed(format!(
                    "{path} lists the pair ({}, {}) twice",
                    t[0], t[1]
                )));
            }
        }
        FiniteGroupoid::new(
            n_obj,
            d0,
            self.vector("d1")?,
            self.vector("identity")?,
            self.vector("inverse")?,
            comp,
        )
    }

    fn internal_groupoid(&self) -> Result<InternalGroupoid> {
        self.expect_kind("internal_groupoid")?;
        self.finish(&[])?;
        InternalGroupoid::new(
            self.record("groupoid")?.groupoid()?,
            self.omega_group("morphism_group")?,
            self.omega_group("object_group")?,
        )
    }

    fn xmod_morphism(&self) -> Result<XModMorphism> {
        self.expect_kind("xmod_morphism")?;
        self.finish(&[])?;
        XModMorphism::new(
            self.record("source")?.crossed_module()?,
            self.record("target")?.crossed_module()?,
            self.vector("on_kernel")?,
            self.vector("on_base")?,
        )
    }

    fn groupoid_morphism(&self) -> Result<Structure> {
        self.expect_kind("groupoid_morphism")?;
        self.finish(&[])?;
        let (src, dst) = (self.record("source")?, self.record("target")?);
        let (object_map, morphism_map) = (self.vector("object_map")?, self.vector("morphism_map")?);
        match (src.kind()?, dst.kind()?) {
            ("groupoid", "groupoid") => Ok(Structure::GroupoidMorphism(GroupoidMorphism::new(
                src.groupoid()?,
                dst.groupoid()?,
                object_map,
                morphism_map,
            )?)),
            ("internal_groupoid", "internal_groupoid") => {
                Ok(Structure::InternalMorphism(InternalMorphism::new(
                    src.internal_groupoid()?,
                    dst.internal_groupoid()?,
                    object_map,
                    morphism_map,
                )?))
            }
            (a, b) => Err(Error::malformed(format!(
                "{}: source and target must both be `groupoid` or both `internal_groupoid`, found `{a}` and `{b}`",
                display_path(&self.path)
            ))),
        }
    }
}

fn fields_of(kind: &str) -> &'static [&'static str] {
    match kind {
        "omega_group" => &["signature", "order", "add", "neg", "binary", "unary"],
        "action" => &["actor", "acted", "dot", "left", "right"],
        "split_extension" => &["kernel", "extension", "base", "inclusion", "projection", "section"],
        "crossed_module" => &["kernel", "base", "boundary", "dot", "left", "right"],
        "groupoid" => &["objects", "morphisms", "d0", "d1", "identity", "inverse", "compose"],
        "internal_groupoid" => &["groupoid", "morphism_group", "object_group"],
        "xmod_morphism" => &["source", "target", "on_kernel", "on_base"],
        "groupoid_morphism" => &["source", "target", "object_map", "morphism_map"],
        _ => &[],
    }
}

fn display_path(path: &str) -> String {
    if path.is_empty() {
        "the top-level value".to_string()
    } else {
        format!("`{path}`")
    }
}

fn check_names(rec: &Record<'_>, names: &[String]) -> Result<()> {
    for key in rec.map.keys() {
        if !names.contains(key) {
            return Err(Error::malformed(format!(
                "`{}` is not an operation of the signature",
                rec.child_path(key)
            )));
        }
    }
    Ok(())
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::malformed(format!("{path} must be a non-negative integer, found {v}")))
}

fn as_vector(v: &Value, path: &str) -> Result<Vec<usize>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::malformed(format!("{path} must be a list of integers")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("{path}[{i}]")))
        .collect()
}

fn as_matrix(v: &Value, path: &str, shape: (usize, usize)) -> Result<Table> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::malformed(format!("{path} must be a list of rows")))?;
    let rows: Vec<Vec<usize>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| as_vector(r, &format!("{path}[{i}]")))
        .collect::<Result<_>>()?;
    Table::from_rows(path, &rows, shape)
}

// ---------------------------------------------------------------- writing

/// Canonical text of a structure, ending in a newline.
pub fn serialize(s: &Structure) -> String {
    let node = match s {
        Structure::OmegaGroup { group, identities } => {
            let mut fields = omega_group_fields(group);
            if !identities.is_empty() {
                fields.push((
                    "identities",
                    Node::Strings(identities.iter().map(|i| i.to_string()).collect()),
                ));
            }
            Node::record("omega_group", fields)
        }
        Structure::Action(a) => action_node(a),
        Structure::SplitExtension(x) => Node::record(
            "split_extension",
            vec![
                ("kernel", omega_group_node(x.kernel())),
                ("extension", omega_group_node(x.extension())),
                ("base", omega_group_node(x.base())),
                ("inclusion", Node::Ints(x.inclusion().map().to_vec())),
                ("projection", Node::Ints(x.projection().map().to_vec())),
                ("section", Node::Ints(x.section().map().to_vec())),
            ],
        ),
        Structure::CrossedModule(x) => crossed_module_node(x),
        Structure::Groupoid(g) => groupoid_node(g),
        Structure::InternalGroupoid(g) => internal_groupoid_node(g),
        Structure::XModMorphism(m) => Node::record(
            "xmod_morphism",
            vec![
                ("source", crossed_module_node(m.source())),
                ("target", crossed_module_node(m.target())),
                ("on_kernel", Node::Ints(m.on_kernel().to_vec())),
                ("on_base", Node::Ints(m.on_base().to_vec())),
            ],
        ),
        Structure::GroupoidMorphism(f) => Node::record(
            "groupoid_morphism",
            vec![
                ("source", groupoid_node(f.source())),
                ("target", groupoid_node(f.target())),
                ("object_map", Node::Ints(f.object_map().to_vec())),
                ("morphism_map", Node::Ints(f.morphism_map().to_vec())),
            ],
        ),
        Structure::InternalMorphism(f) => Node::record(
            "groupoid_morphism",
            vec![
                ("source", internal_groupoid_node(f.source())),
                ("target", internal_groupoid_node(f.target())),
                ("object_map", Node::Ints(f.object_map().to_vec())),
                ("morphism_map", Node::Ints(f.morphism_map().to_vec())),
            ],
        ),
    };
    let mut out = String::new();
    node.write(&mut out, 0);
    out.push('\n');
    out
}

enum Node {
    Object(Vec<(String, Node)>),
    Str(String),
    Int(usize),
    Ints(Vec<usize>),
    Strings(Vec<String>),
    /// Written one row per line.
    Rows(Vec<Vec<usize>>),
}

impl Node {
    fn record(kind: &str, fields: Vec<(&str, Node)>) -> Node {
        let mut all = vec![("kind".to_string(), Node::Str(kind.to_string()))];
        all.extend(fields.into_iter().map(|(k, v)| (k.to_string(), v)));
        Node::Object(all)
    }

    fn object(fields: Vec<(String, Node)>) -> Node {
        Node::Object(fields)
    }

    fn write(&self, out: &mut String, indent: usize) {
        let pad = |n: usize| " ".repeat(n);
        match self {
            Node::Str(s) => out.push_str(&Value::String(s.clone()).to_string()),
            Node::Int(n) => write!(out, "{n}").unwrap(),
            Node::Ints(v) => out.push_str(&ints(v)),
            Node::Strings(v) => {
                let items: Vec<String> =
                    v.iter().map(|s| Value::String(s.clone()).to_string()).collect();
                write!(out, "[{}]", items.join(", ")).unwrap();
            }
            Node::Rows(rows) => {
                if rows.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push_str("[\n");
                for (i, r) in rows.iter().enumerate() {
                    out.push_str(&pad(indent + 2));
                    out.push_str(&ints(r));
                    out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Node::Object(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                for (i, (k, v)) in fields.iter().enumerate() {
                    out.push_str(&pad(indent + 2));
                    out.push_str(&Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    v.write(out, indent + 2);
                    out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
        }
    }
}

fn ints(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn omega_group_fields(g: &OmegaGroup) -> Vec<(&'static str, Node)> {
    let sig = g.signature();
    vec![
        (
            "signature",
            Node::object(vec![
                ("label".into(), Node::Str(sig.label().to_string())),
                ("binary".into(), Node::Strings(sig.binary_ops().to_vec())),
                ("unary".into(), Node::Strings(sig.unary_ops().to_vec())),
            ]),
        ),
        ("order", Node::Int(g.order())),
        ("add", Node::Rows(g.add_table().to_rows())),
        ("neg", Node::Ints(g.neg_table().to_vec())),
        (
            "binary",
            Node::object(
                sig.binary_ops()
                    .iter()
                    .zip(g.binary_tables())
                    .map(|(n, t)| (n.clone(), Node::Rows(t.to_rows())))
                    .collect(),
            ),
        ),
        (
            "unary",
            Node::object(
                sig.unary_ops()
                    .iter()
                    .zip(g.unary_tables())
                    .map(|(n, t)| (n.clone(), Node::Ints(t.clone())))
                    .collect(),
            ),
        ),
    ]
}

fn omega_group_node(g: &OmegaGroup) -> Node {
    Node::record("omega_group", omega_group_fields(g))
}

fn named_tables(names: &[String], tables: &[Table]) -> Node {
    Node::object(
        names
            .iter()
            .zip(tables)
            .map(|(n, t)| (n.clone(), Node::Rows(t.to_rows())))
            .collect(),
    )
}

fn action_fields(a: &ActionFamily) -> Vec<(&'static str, Node)> {
    let names = a.actor().signature().binary_ops();
    vec![
        ("dot", Node::Rows(a.dot_table().to_rows())),
        ("left", named_tables(names, a.left_tables())),
        ("right", named_tables(names, a.right_tables())),
    ]
}

fn action_node(a: &ActionFamily) -> Node {
    let mut fields = vec![
        ("actor", omega_group_node(a.actor())),
        ("acted", omega_group_node(a.acted())),
    ];
    fields.extend(action_fields(a));
    Node::record("action", fields)
}

fn crossed_module_node(x: &CrossedModule) -> Node {
    let mut fields = vec![
        ("kernel", omega_group_node(x.kernel())),
        ("base", omega_group_node(x.base())),
        ("boundary", Node::Ints(x.boundary().map().to_vec())),
    ];
    fields.extend(action_fields(x.action()));
    Node::record("crossed_module", fields)
}

fn groupoid_node(g: &FiniteGroupoid) -> Node {
    Node::record(
        "groupoid",
        vec![
            ("objects", Node::Int(g.n_objects())),
            ("morphisms", Node::Int(g.n_morphisms())),
            ("d0", Node::Ints(g.d0_table().to_vec())),
            ("d1", Node::Ints(g.d1_table().to_vec())),
            ("identity", Node::Ints(g.identity_table().to_vec())),
            ("inverse", Node::Ints(g.inverse_table().to_vec())),
            (
                "compose",
                Node::Rows(g.composites().map(|((a, b), c)| vec![a, b, c]).collect()),
            ),
        ],
    )
}

fn internal_groupoid_node(g: &InternalGroupoid) -> Node {
    Node::record(
        "internal_groupoid",
        vec![
            ("groupoid", groupoid_node(g.groupoid())),
            ("morphism_group", omega_group_node(g.morphism_group())),
            ("object_group", omega_group_node(g.object_group())),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generators::{gen_cyclic_group, gen_cyclic_ring, gen_module, gen_pair_groupoid};

    #[test]
    fn omega_group_round_trip() {
        let s = Structure::from(gen_cyclic_ring(4));
        let text = serialize(&s);
        assert!(text.starts_with("{\n  \"kind\": \"omega_group\",\n"));
        assert!(text.contains("  \"neg\": [0, 3, 2, 1],\n"));
        let back = parse(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn identities_round_trip() {
        let s = Structure::OmegaGroup {
            group: gen_cyclic_ring(3),
            identities: vec!["forall a b. (mul a b) = (mul b a)".parse().unwrap()],
        };
        let text = serialize(&s);
        assert_eq!(parse(&text).unwrap(), s);
    }

    #[test]
    fn nested_round_trip() {
        for s in [
            Structure::from(gen_pair_groupoid(&gen_module(2, 2))),
            Structure::from(InternalMorphism::identity(&gen_pair_groupoid(&gen_cyclic_group(2)))),
        ] {
            let text = serialize(&s);
            assert_eq!(parse(&text).unwrap(), s);
        }
    }

    #[test]
    fn errors() {
        let text = serialize(&Structure::from(gen_cyclic_group(4)));
        let bad = text.replacen("[0, 3, 2, 1]", "[0, 3, 2, 9]", 1);
        assert!(matches!(parse(&bad), Err(Error::OutOfRange { value: 9, .. })));
        match parse("{\n  \"kind\": \"omega_group\",\n  oops\n}") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let extra = text.replacen("\"order\"", "\"colour\": 1,\n  \"order\"", 1);
        assert!(matches!(parse(&extra), Err(Error::Malformed(_))));
        assert!(matches!(parse("{\"kind\": \"ring\"}"), Err(Error::Malformed(_))));
    }
}
