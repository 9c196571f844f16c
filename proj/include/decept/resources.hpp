// Copyright 2026 The decept-cue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tools/embed_resources.py; edit the files in data/ instead.

#pragma once

#include <string_view>

namespace decept::resources {

inline constexpr std::string_view function_words = R"DECEPT(# decept-cue function-word lexicon v1
# word<TAB>default POS (OntoNotes/Penn tagset)
a	DT
an	DT
the	DT
this	DT
that	IN
these	DT
those	DT
all	DT
any	DT
each	DT
every	DT
some	DT
no	DT
another	DT
either	DT
neither	DT
both	DT
my	PRP$
your	PRP$
his	PRP$
her	PRP$
its	PRP$
our	PRP$
their	PRP$
i	PRP
me	PRP
you	PRP
he	PRP
him	PRP
she	PRP
it	PRP
we	PRP
us	PRP
they	PRP
them	PRP
myself	PRP
yourself	PRP
himself	PRP
herself	PRP
itself	PRP
ourselves	PRP
yourselves	PRP
themselves	PRP
mine	PRP
yours	PRP
hers	PRP
ours	PRP
theirs	PRP
who	WP
whom	WP
whose	WP$
what	WP
whoever	WP
which	WDT
whatever	WDT
whichever	WDT
when	WRB
where	WRB
why	WRB
how	WRB
whether	IN
about	IN
above	IN
across	IN
after	IN
against	IN
along	IN
among	IN
around	IN
as	IN
at	IN
before	IN
behind	IN
below	IN
beneath	IN
beside	IN
between	IN
beyond	IN
by	IN
despite	IN
down	RP
during	IN
except	IN
for	IN
from	IN
in	IN
inside	IN
into	IN
like	IN
near	IN
of	IN
off	IN
on	IN
onto	IN
out	IN
outside	IN
over	IN
past	IN
since	IN
through	IN
throughout	IN
till	IN
toward	IN
towards	IN
under	IN
underneath	IN
until	IN
unto	IN
up	RP
upon	IN
via	IN
with	IN
within	IN
without	IN
because	IN
although	IN
though	IN
if	IN
unless	IN
while	IN
whereas	IN
than	IN
and	CC
but	CC
or	CC
nor	CC
yet	CC
plus	CC
to	TO
can	MD
could	MD
may	MD
might	MD
must	MD
shall	MD
should	MD
will	MD
would	MD
ought	MD
'll	MD
'd	MD
wo	MD
ca	MD
am	VBP
is	VBZ
are	VBP
was	VBD
were	VBD
be	VB
been	VBN
being	VBG
'm	VBP
're	VBP
've	VBP
's	POS
have	VBP
has	VBZ
had	VBD
having	VBG
do	VBP
does	VBZ
did	VBD
doing	VBG
done	VBN
not	RB
n't	RB
never	RB
there	EX
here	RB
then	RB
now	RB
very	RB
too	RB
also	RB
just	RB
only	RB
even	RB
still	RB
again	RB
ever	RB
already	RB
quite	RB
rather	RB
almost	RB
however	RB
thus	RB
therefore	RB
hence	RB
else	RB
so	RB
many	JJ
much	JJ
more	JJR
most	JJS
few	JJ
less	JJR
least	JJS
several	JJ
enough	JJ
other	JJ
own	JJ
same	JJ
oh	UH
yes	UH
)DECEPT";

inline constexpr std::string_view abbreviations = R"DECEPT(# decept-cue abbreviation list v1 (lowercase, trailing period included)
dr.
mr.
mrs.
ms.
prof.
sr.
jr.
st.
vs.
etc.
e.g.
i.e.
inc.
ltd.
co.
corp.
jan.
feb.
mar.
apr.
jun.
jul.
aug.
sep.
sept.
oct.
nov.
dec.
mt.
no.
fig.
u.s.
u.k.
a.m.
p.m.
approx.
dept.
est.
gen.
gov.
sen.
rep.
lt.
col.
capt.
sgt.
)DECEPT";

inline constexpr std::string_view contractions = R"DECEPT(# decept-cue contraction suffixes v1 (split off a word-final clitic)
n't
're
've
'll
'd
'm
's
)DECEPT";

inline constexpr std::string_view demo_dictionary = R"DECEPT(# decept-cue open demo category dictionary v1
# Small, hand-written stand-in for a licensed category lexicon.
[certain]
absolute*
always
certain*
clear
clearly
completely
definite*
fact
guarantee*
indeed
never
obvious*
sure*
total*
truly
undoubt*
[space]
above
across
around
behind
below
between
down
here
inside
left
near
outside
over
right
there
under
up
where
[time]
after
again
ago
already
before
day*
early
hour*
later
minute*
month*
never
now
often
once
soon
then
time*
today
tomorrow
until
week*
when
year*
yesterday
[percep]
feel*
felt
hear*
heard
listen*
look*
saw
see
seen
smell*
sound*
taste*
touch*
view*
watch*
[posemo]
amazing
best
better
excellent
fantastic
good
great
happ*
love*
nice
perfect*
pleas*
recommend*
wonderful
[negemo]
angry
awful
bad
broke*
disappoint*
fail*
fear*
hate*
horribl*
poor*
problem*
terribl*
worse
worst
wrong
[article]
a
an
the
[negate]
no
not
n't
never
none
nothing
nobody
)DECEPT";

}  // namespace decept::resources
