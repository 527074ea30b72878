//! Abstract syntax of kinds and types, with the structural operations the
//! rest of the checker builds on: free variables, capture-avoiding
//! substitution of type variables, and alpha-equality.
//!
//! Session types cover message exchange (`!T`, `?T`), internal and external
//! choice, sequential composition `T ; U` with neutral element `Skip`,
//! channel closing (`Close` / `Wait`) and recursion. Functional types cover
//! arrows, universal quantification and a few base types. Instantiation
//! variables only ever appear in types produced during inference.

use std::collections::BTreeSet;
use std::fmt;

use crate::names::{InstVarName, Label, TypeVarName};

/// lin/un multiplicity, shared by kinds and arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Lin,
    Un,
}

impl Multiplicity {
    /// lin absorbs: a composite is lin as soon as one part is.
    pub fn join(self, other: Multiplicity) -> Multiplicity {
        if self == Multiplicity::Lin || other == Multiplicity::Lin {
            Multiplicity::Lin
        } else {
            Multiplicity::Un
        }
    }
}

/// Whether a kind classifies session or functional types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseKind {
    Session,
    Functional,
}

/// A kind: session/functional paired with a multiplicity. Exactly four
/// inhabitants; there is no subkinding and no kind inference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Kind {
    pub base: BaseKind,
    pub mult: Multiplicity,
}

impl Kind {
    pub const SESSION_LIN: Kind = Kind { base: BaseKind::Session, mult: Multiplicity::Lin };
    pub const SESSION_UN: Kind = Kind { base: BaseKind::Session, mult: Multiplicity::Un };
    pub const FUNCTIONAL_LIN: Kind = Kind { base: BaseKind::Functional, mult: Multiplicity::Lin };
    pub const FUNCTIONAL_UN: Kind = Kind { base: BaseKind::Functional, mult: Multiplicity::Un };

    pub fn is_session(self) -> bool {
        self.base == BaseKind::Session
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base, self.mult) {
            (BaseKind::Session, Multiplicity::Lin) => f.write_str("S"),
            (BaseKind::Session, Multiplicity::Un) => f.write_str("SU"),
            (BaseKind::Functional, Multiplicity::Un) => f.write_str("T"),
            (BaseKind::Functional, Multiplicity::Lin) => f.write_str("TL"),
        }
    }
}

/// Message polarity: output `!` or input `?`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Polarity {
    Out,
    In,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Out => f.write_str("!"),
            Polarity::In => f.write_str("?"),
        }
    }
}

/// Choice view: internal `+` or external `&`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum View {
    Internal,
    External,
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            View::Internal => f.write_str("+"),
            View::External => f.write_str("&"),
        }
    }
}

/// Which end-of-session constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EndKind {
    Close,
    Wait,
}

impl fmt::Display for EndKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndKind::Close => f.write_str("Close"),
            EndKind::Wait => f.write_str("Wait"),
        }
    }
}

/// Base (builtin functional) types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseType {
    Int,
    Bool,
    Unit,
    Str,
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseType::Int => f.write_str("Int"),
            BaseType::Bool => f.write_str("Bool"),
            BaseType::Unit => f.write_str("Unit"),
            BaseType::Str => f.write_str("String"),
        }
    }
}

/// Types. Derived equality is raw syntactic equality (bound names included);
/// use [`alpha_eq`] for equality up to renaming of bound variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Type {
    Skip,
    End(EndKind),
    Message(Polarity, Box<Type>),
    /// Branches are non-empty, label-sorted and label-distinct; build them
    /// through [`Type::choice`] to keep that invariant.
    Choice(View, Vec<(Label, Type)>),
    Seq(Box<Type>, Box<Type>),
    Rec(TypeVarName, Kind, Box<Type>),
    Var(TypeVarName),
    InstVar(InstVarName),
    Arrow(Multiplicity, Box<Type>, Box<Type>),
    Forall(TypeVarName, Kind, Box<Type>),
    Base(BaseType),
}

impl Type {
    pub fn msg(pol: Polarity, payload: Type) -> Type {
        Type::Message(pol, Box::new(payload))
    }

    pub fn out(payload: Type) -> Type {
        Type::msg(Polarity::Out, payload)
    }

    pub fn inp(payload: Type) -> Type {
        Type::msg(Polarity::In, payload)
    }

    pub fn seq(lhs: Type, rhs: Type) -> Type {
        Type::Seq(Box::new(lhs), Box::new(rhs))
    }

    /// Builds a choice, sorting branches by label.
    pub fn choice(view: View, mut branches: Vec<(Label, Type)>) -> Type {
        branches.sort_by(|a, b| a.0.cmp(&b.0));
        Type::Choice(view, branches)
    }

    pub fn rec(var: impl Into<String>, kind: Kind, body: Type) -> Type {
        Type::Rec(TypeVarName::new(var), kind, Box::new(body))
    }

    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(TypeVarName::new(name))
    }

    pub fn inst_var(name: impl Into<String>) -> Type {
        Type::InstVar(InstVarName::new(name))
    }

    pub fn arrow(mult: Multiplicity, dom: Type, cod: Type) -> Type {
        Type::Arrow(mult, Box::new(dom), Box::new(cod))
    }

    pub fn un_arrow(dom: Type, cod: Type) -> Type {
        Type::arrow(Multiplicity::Un, dom, cod)
    }

    pub fn forall(var: impl Into<String>, kind: Kind, body: Type) -> Type {
        Type::Forall(TypeVarName::new(var), kind, Box::new(body))
    }

    pub const INT: Type = Type::Base(BaseType::Int);
    pub const BOOL: Type = Type::Base(BaseType::Bool);
    pub const UNIT: Type = Type::Base(BaseType::Unit);
    pub const STRING: Type = Type::Base(BaseType::Str);
    pub const CLOSE: Type = Type::End(EndKind::Close);
    pub const WAIT: Type = Type::End(EndKind::Wait);
}

/// Free instantiation variables of a type. Instantiation variables have no
/// binder, so this is simply every `InstVar` occurrence.
pub fn fiv(t: &Type) -> BTreeSet<InstVarName> {
    let mut acc = BTreeSet::new();
    collect_fiv(t, &mut acc);
    acc
}

fn collect_fiv(t: &Type, acc: &mut BTreeSet<InstVarName>) {
    match t {
        Type::Skip | Type::End(_) | Type::Var(_) | Type::Base(_) => {}
        Type::InstVar(x) => {
            acc.insert(x.clone());
        }
        Type::Message(_, payload) => collect_fiv(payload, acc),
        Type::Choice(_, branches) => {
            for (_, b) in branches {
                collect_fiv(b, acc);
            }
        }
        Type::Seq(l, r) | Type::Arrow(_, l, r) => {
            collect_fiv(l, acc);
            collect_fiv(r, acc);
        }
        Type::Rec(_, _, body) | Type::Forall(_, _, body) => collect_fiv(body, acc),
    }
}

/// Free type variables of a type.
pub fn free_type_vars(t: &Type) -> BTreeSet<TypeVarName> {
    let mut acc = BTreeSet::new();
    let mut bound = Vec::new();
    collect_ftv(t, &mut bound, &mut acc);
    acc
}

fn collect_ftv(t: &Type, bound: &mut Vec<TypeVarName>, acc: &mut BTreeSet<TypeVarName>) {
    match t {
        Type::Skip | Type::End(_) | Type::InstVar(_) | Type::Base(_) => {}
        Type::Var(a) => {
            if !bound.contains(a) {
                acc.insert(a.clone());
            }
        }
        Type::Message(_, payload) => collect_ftv(payload, bound, acc),
        Type::Choice(_, branches) => {
            for (_, b) in branches {
                collect_ftv(b, bound, acc);
            }
        }
        Type::Seq(l, r) | Type::Arrow(_, l, r) => {
            collect_ftv(l, bound, acc);
            collect_ftv(r, bound, acc);
        }
        Type::Rec(a, _, body) | Type::Forall(a, _, body) => {
            bound.push(a.clone());
            collect_ftv(body, bound, acc);
            bound.pop();
        }
    }
}

/// Capture-avoiding substitution `[replacement/var] t` of a type for a type
/// variable. Binders in `t` that would capture a free variable of
/// `replacement` are renamed first.
pub fn subst_type_var(t: &Type, var: &TypeVarName, replacement: &Type) -> Type {
    let free_in_replacement = free_type_vars(replacement);
    subst_tv(t, var, replacement, &free_in_replacement)
}

fn subst_tv(
    t: &Type,
    var: &TypeVarName,
    replacement: &Type,
    avoid: &BTreeSet<TypeVarName>,
) -> Type {
    match t {
        Type::Skip | Type::End(_) | Type::InstVar(_) | Type::Base(_) => t.clone(),
        Type::Var(a) => {
            if a == var {
                replacement.clone()
            } else {
                t.clone()
            }
        }
        Type::Message(pol, payload) => {
            Type::msg(*pol, subst_tv(payload, var, replacement, avoid))
        }
        Type::Choice(view, branches) => Type::Choice(
            *view,
            branches
                .iter()
                .map(|(l, b)| (l.clone(), subst_tv(b, var, replacement, avoid)))
                .collect(),
        ),
        Type::Seq(l, r) => Type::seq(
            subst_tv(l, var, replacement, avoid),
            subst_tv(r, var, replacement, avoid),
        ),
        Type::Arrow(m, d, c) => Type::arrow(
            *m,
            subst_tv(d, var, replacement, avoid),
            subst_tv(c, var, replacement, avoid),
        ),
        Type::Rec(a, k, body) => {
            let (a, body) = subst_under_binder(a, body, var, replacement, avoid);
            Type::Rec(a, *k, Box::new(body))
        }
        Type::Forall(a, k, body) => {
            let (a, body) = subst_under_binder(a, body, var, replacement, avoid);
            Type::Forall(a, *k, Box::new(body))
        }
    }
}

fn subst_under_binder(
    binder: &TypeVarName,
    body: &Type,
    var: &TypeVarName,
    replacement: &Type,
    avoid: &BTreeSet<TypeVarName>,
) -> (TypeVarName, Type) {
    if binder == var {
        // shadowed: substitution stops here
        return (binder.clone(), (**body).clone());
    }
    if avoid.contains(binder) {
        // rename the binder away from the replacement's free variables
        let fresh = rename_away(binder, body, avoid);
        let renamed = subst_type_var(body, binder, &Type::Var(fresh.clone()));
        (fresh.clone(), subst_tv(&renamed, var, replacement, avoid))
    } else {
        (binder.clone(), subst_tv(body, var, replacement, avoid))
    }
}

/// Deterministic supply-free renaming: bump a numeric suffix until the name
/// is free in both the body and the avoidance set.
fn rename_away(binder: &TypeVarName, body: &Type, avoid: &BTreeSet<TypeVarName>) -> TypeVarName {
    let in_body = free_type_vars(body);
    let mut n = 1u64;
    loop {
        let candidate = TypeVarName(format!("{}{}", binder.0, n));
        if !avoid.contains(&candidate) && !in_body.contains(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

/// Alpha-equality: identical up to a consistent renaming of bound type
/// variables. Kinds at binders must agree. Purely syntactic otherwise
/// (`Skip ; Skip` is not alpha-equal to `Skip`).
pub fn alpha_eq(t1: &Type, t2: &Type) -> bool {
    let mut env1 = Vec::new();
    let mut env2 = Vec::new();
    alpha_eq_in(t1, t2, &mut env1, &mut env2)
}

fn var_index(env: &[TypeVarName], name: &TypeVarName) -> Option<usize> {
    env.iter().rposition(|b| b == name)
}

fn alpha_eq_in(
    t1: &Type,
    t2: &Type,
    env1: &mut Vec<TypeVarName>,
    env2: &mut Vec<TypeVarName>,
) -> bool {
    match (t1, t2) {
        (Type::Skip, Type::Skip) => true,
        (Type::End(a), Type::End(b)) => a == b,
        (Type::Base(a), Type::Base(b)) => a == b,
        (Type::InstVar(a), Type::InstVar(b)) => a == b,
        (Type::Var(a), Type::Var(b)) => match (var_index(env1, a), var_index(env2, b)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => a == b,
            _ => false,
        },
        (Type::Message(p1, t1), Type::Message(p2, t2)) => {
            p1 == p2 && alpha_eq_in(t1, t2, env1, env2)
        }
        (Type::Choice(v1, bs1), Type::Choice(v2, bs2)) => {
            v1 == v2
                && bs1.len() == bs2.len()
                && bs1.iter().zip(bs2).all(|((l1, b1), (l2, b2))| {
                    l1 == l2 && alpha_eq_in(b1, b2, env1, env2)
                })
        }
        (Type::Seq(l1, r1), Type::Seq(l2, r2)) => {
            alpha_eq_in(l1, l2, env1, env2) && alpha_eq_in(r1, r2, env1, env2)
        }
        (Type::Arrow(m1, d1, c1), Type::Arrow(m2, d2, c2)) => {
            m1 == m2 && alpha_eq_in(d1, d2, env1, env2) && alpha_eq_in(c1, c2, env1, env2)
        }
        (Type::Rec(a1, k1, b1), Type::Rec(a2, k2, b2))
        | (Type::Forall(a1, k1, b1), Type::Forall(a2, k2, b2)) => {
            if k1 != k2 {
                return false;
            }
            env1.push(a1.clone());
            env2.push(a2.clone());
            let r = alpha_eq_in(b1, b2, env1, env2);
            env1.pop();
            env2.pop();
            r
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1_body() -> Type {
        // (!Int ; a) ; X
        Type::seq(
            Type::seq(Type::out(Type::INT), Type::var("a")),
            Type::inst_var("X"),
        )
    }

    fn s1() -> Type {
        Type::rec("a", Kind::SESSION_LIN, s1_body())
    }

    #[test]
    fn subst_direct_hit() {
        let t = Type::var("a");
        assert_eq!(subst_type_var(&t, &"a".into(), &Type::Skip), Type::Skip);
    }

    #[test]
    fn subst_shadowed_binder_is_untouched() {
        // [?Bool/a] (rec a . !Int ; a) leaves the type unchanged
        let t = Type::rec(
            "a",
            Kind::SESSION_LIN,
            Type::seq(Type::out(Type::INT), Type::var("a")),
        );
        let got = subst_type_var(&t, &"a".into(), &Type::inp(Type::BOOL));
        assert_eq!(got, t);
    }

    #[test]
    fn subst_unfolds_one_step_of_a_recursive_body() {
        // [S1/a] ((!Int ; a) ; X)  =  (!Int ; S1) ; X
        let got = subst_type_var(&s1_body(), &"a".into(), &s1());
        let want = Type::seq(
            Type::seq(Type::out(Type::INT), s1()),
            Type::inst_var("X"),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn subst_avoids_capture() {
        // [b/a] (rec b . a ; !b-payload...) must rename the bound b
        let t = Type::rec(
            "b",
            Kind::SESSION_LIN,
            Type::seq(Type::out(Type::INT), Type::seq(Type::var("a"), Type::var("b"))),
        );
        let got = subst_type_var(&t, &"a".into(), &Type::var("b"));
        // the substituted-in b must still be free afterwards
        assert!(free_type_vars(&got).contains(&"b".into()));
        match &got {
            Type::Rec(binder, _, _) => assert_ne!(binder.as_str(), "b"),
            other => panic!("expected rec, got {:?}", other),
        }
    }

    #[test]
    fn fiv_examples() {
        assert!(fiv(&Type::seq(Type::out(Type::INT), Type::CLOSE)).is_empty());
        let vars = fiv(&s1());
        assert_eq!(vars.len(), 1);
        assert!(vars.contains(&"X".into()));
        let two = fiv(&Type::un_arrow(Type::inst_var("X"), Type::inst_var("Y")));
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn alpha_eq_examples() {
        let t1 = Type::rec("a", Kind::SESSION_LIN, Type::seq(Type::out(Type::INT), Type::var("a")));
        let t2 = Type::rec("b", Kind::SESSION_LIN, Type::seq(Type::out(Type::INT), Type::var("b")));
        assert!(alpha_eq(&t1, &t2));
        assert!(!alpha_eq(&Type::Skip, &Type::seq(Type::Skip, Type::Skip)));
        let u1 = Type::forall("a", Kind::FUNCTIONAL_UN, Type::un_arrow(Type::var("a"), Type::var("a")));
        let u2 = Type::forall("b", Kind::FUNCTIONAL_UN, Type::un_arrow(Type::var("b"), Type::var("b")));
        assert!(alpha_eq(&u1, &u2));
    }

    #[test]
    fn alpha_eq_distinguishes_free_variables() {
        assert!(!alpha_eq(&Type::var("a"), &Type::var("b")));
        assert!(alpha_eq(&Type::var("a"), &Type::var("a")));
    }
}
