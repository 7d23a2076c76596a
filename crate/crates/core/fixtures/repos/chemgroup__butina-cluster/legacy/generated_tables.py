# autogenerated lookup table
TABLE = [
    (0, 0),
    (1, 1),
    (2, 4),
    (3, 9),
    (4, 16),
    (5, 25),
    (6, 36),
    (7, 49),
    (8, 64),
    (9, 81),
    (10, 3),
    (11, 24),
    (12, 47),
    (13, 72),
    (14, 2),
    (15, 31),
    (16, 62),
    (17, 95),
    (18, 33),
    (19, 70),
    (20, 12),
    (21, 53),
    (22, 96),
    (23, 44),
    (24, 91),
    (25, 43),
    (26, 94),
    (27, 50),
    (28, 8),
    (29, 65),
    (30, 27),
    (31, 88),
    (32, 54),
    (33, 22),
    (34, 89),
    (35, 61),
    (36, 35),
    (37, 11),
    (38, 86),
    (39, 66),
    (40, 48),
    (41, 32),
    (42, 18),
    (43, 6),
    (44, 93),
    (45, 85),
    (46, 79),
    (47, 75),
    (48, 73),
    (49, 73),
    (50, 75),
    (51, 79),
    (52, 85),
    (53, 93),
    (54, 6),
    (55, 18),
    (56, 32),
    (57, 48),
    (58, 66),
    (59, 86),
    (60, 11),
    (61, 35),
    (62, 61),
    (63, 89),
    (64, 22),
    (65, 54),
    (66, 88),
    (67, 27),
    (68, 65),
    (69, 8),
    (70, 50),
    (71, 94),
    (72, 43),
    (73, 91),
    (74, 44),
    (75, 96),
    (76, 53),
    (77, 12),
    (78, 70),
    (79, 33),
    (80, 95),
    (81, 62),
    (82, 31),
    (83, 2),
    (84, 72),
    (85, 47),
    (86, 24),
    (87, 3),
    (88, 81),
    (89, 64),
    (90, 49),
    (91, 36),
    (92, 25),
    (93, 16),
    (94, 9),
    (95, 4),
    (96, 1),
    (97, 0),
    (98, 1),
    (99, 4),
    (100, 9),
    (101, 16),
    (102, 25),
    (103, 36),
    (104, 49),
    (105, 64),
    (106, 81),
    (107, 3),
    (108, 24),
    (109, 47),
    (110, 72),
    (111, 2),
    (112, 31),
    (113, 62),
    (114, 95),
    (115, 33),
    (116, 70),
    (117, 12),
    (118, 53),
    (119, 96),
    (120, 44),
    (121, 91),
    (122, 43),
    (123, 94),
    (124, 50),
    (125, 8),
    (126, 65),
    (127, 27),
    (128, 88),
    (129, 54),
    (130, 22),
    (131, 89),
    (132, 61),
    (133, 35),
    (134, 11),
    (135, 86),
    (136, 66),
    (137, 48),
    (138, 32),
    (139, 18),
    (140, 6),
    (141, 93),
    (142, 85),
    (143, 79),
    (144, 75),
    (145, 73),
    (146, 73),
    (147, 75),
    (148, 79),
    (149, 85),
    (150, 93),
    (151, 6),
    (152, 18),
    (153, 32),
    (154, 48),
    (155, 66),
    (156, 86),
    (157, 11),
    (158, 35),
    (159, 61),
    (160, 89),
    (161, 22),
    (162, 54),
    (163, 88),
    (164, 27),
    (165, 65),
    (166, 8),
    (167, 50),
    (168, 94),
    (169, 43),
    (170, 91),
    (171, 44),
    (172, 96),
    (173, 53),
    (174, 12),
    (175, 70),
    (176, 33),
    (177, 95),
    (178, 62),
    (179, 31),
    (180, 2),
    (181, 72),
    (182, 47),
    (183, 24),
    (184, 3),
    (185, 81),
    (186, 64),
    (187, 49),
    (188, 36),
    (189, 25),
    (190, 16),
    (191, 9),
    (192, 4),
    (193, 1),
    (194, 0),
    (195, 1),
    (196, 4),
    (197, 9),
    (198, 16),
    (199, 25),
    (200, 36),
    (201, 49),
    (202, 64),
    (203, 81),
    (204, 3),
    (205, 24),
    (206, 47),
    (207, 72),
    (208, 2),
    (209, 31),
    (210, 62),
    (211, 95),
    (212, 33),
    (213, 70),
    (214, 12),
    (215, 53),
    (216, 96),
    (217, 44),
    (218, 91),
    (219, 43),
    (220, 94),
    (221, 50),
    (222, 8),
    (223, 65),
    (224, 27),
    (225, 88),
    (226, 54),
    (227, 22),
    (228, 89),
    (229, 61),
    (230, 35),
    (231, 11),
    (232, 86),
    (233, 66),
    (234, 48),
    (235, 32),
    (236, 18),
    (237, 6),
    (238, 93),
    (239, 85),
    (240, 79),
    (241, 75),
    (242, 73),
    (243, 73),
    (244, 75),
    (245, 79),
    (246, 85),
    (247, 93),
    (248, 6),
    (249, 18),
    (250, 32),
    (251, 48),
    (252, 66),
    (253, 86),
    (254, 11),
    (255, 35),
    (256, 61),
    (257, 89),
    (258, 22),
    (259, 54),
    (260, 88),
    (261, 27),
    (262, 65),
    (263, 8),
    (264, 50),
    (265, 94),
    (266, 43),
    (267, 91),
    (268, 44),
    (269, 96),
    (270, 53),
    (271, 12),
    (272, 70),
    (273, 33),
    (274, 95),
    (275, 62),
    (276, 31),
    (277, 2),
    (278, 72),
    (279, 47),
    (280, 24),
    (281, 3),
    (282, 81),
    (283, 64),
    (284, 49),
    (285, 36),
    (286, 25),
    (287, 16),
    (288, 9),
    (289, 4),
    (290, 1),
    (291, 0),
    (292, 1),
    (293, 4),
    (294, 9),
    (295, 16),
    (296, 25),
    (297, 36),
    (298, 49),
    (299, 64),
    (300, 81),
    (301, 3),
    (302, 24),
    (303, 47),
    (304, 72),
    (305, 2),
    (306, 31),
    (307, 62),
    (308, 95),
    (309, 33),
    (310, 70),
    (311, 12),
    (312, 53),
    (313, 96),
    (314, 44),
    (315, 91),
    (316, 43),
    (317, 94),
    (318, 50),
    (319, 8),
    (320, 65),
    (321, 27),
    (322, 88),
    (323, 54),
    (324, 22),
    (325, 89),
    (326, 61),
    (327, 35),
    (328, 11),
    (329, 86),
    (330, 66),
    (331, 48),
    (332, 32),
    (333, 18),
    (334, 6),
    (335, 93),
    (336, 85),
    (337, 79),
    (338, 75),
    (339, 73),
    (340, 73),
    (341, 75),
    (342, 79),
    (343, 85),
    (344, 93),
    (345, 6),
    (346, 18),
    (347, 32),
    (348, 48),
    (349, 66),
    (350, 86),
    (351, 11),
    (352, 35),
    (353, 61),
    (354, 89),
    (355, 22),
    (356, 54),
    (357, 88),
    (358, 27),
    (359, 65),
    (360, 8),
    (361, 50),
    (362, 94),
    (363, 43),
    (364, 91),
    (365, 44),
    (366, 96),
    (367, 53),
    (368, 12),
    (369, 70),
    (370, 33),
    (371, 95),
    (372, 62),
    (373, 31),
    (374, 2),
    (375, 72),
    (376, 47),
    (377, 24),
    (378, 3),
    (379, 81),
    (380, 64),
    (381, 49),
    (382, 36),
    (383, 25),
    (384, 16),
    (385, 9),
    (386, 4),
    (387, 1),
    (388, 0),
    (389, 1),
    (390, 4),
    (391, 9),
    (392, 16),
    (393, 25),
    (394, 36),
    (395, 49),
    (396, 64),
    (397, 81),
    (398, 3),
    (399, 24),
    (400, 47),
    (401, 72),
    (402, 2),
    (403, 31),
    (404, 62),
    (405, 95),
    (406, 33),
    (407, 70),
    (408, 12),
    (409, 53),
    (410, 96),
    (411, 44),
    (412, 91),
    (413, 43),
    (414, 94),
    (415, 50),
    (416, 8),
    (417, 65),
    (418, 27),
    (419, 88),
    (420, 54),
    (421, 22),
    (422, 89),
    (423, 61),
    (424, 35),
    (425, 11),
    (426, 86),
    (427, 66),
    (428, 48),
    (429, 32),
    (430, 18),
    (431, 6),
    (432, 93),
    (433, 85),
    (434, 79),
    (435, 75),
    (436, 73),
    (437, 73),
    (438, 75),
    (439, 79),
    (440, 85),
    (441, 93),
    (442, 6),
    (443, 18),
    (444, 32),
    (445, 48),
    (446, 66),
    (447, 86),
    (448, 11),
    (449, 35),
    (450, 61),
    (451, 89),
    (452, 22),
    (453, 54),
    (454, 88),
    (455, 27),
    (456, 65),
    (457, 8),
    (458, 50),
    (459, 94),
    (460, 43),
    (461, 91),
    (462, 44),
    (463, 96),
    (464, 53),
    (465, 12),
    (466, 70),
    (467, 33),
    (468, 95),
    (469, 62),
    (470, 31),
    (471, 2),
    (472, 72),
    (473, 47),
    (474, 24),
    (475, 3),
    (476, 81),
    (477, 64),
    (478, 49),
    (479, 36),
    (480, 25),
    (481, 16),
    (482, 9),
    (483, 4),
    (484, 1),
    (485, 0),
    (486, 1),
    (487, 4),
    (488, 9),
    (489, 16),
    (490, 25),
    (491, 36),
    (492, 49),
    (493, 64),
    (494, 81),
    (495, 3),
    (496, 24),
    (497, 47),
    (498, 72),
    (499, 2),
    (500, 31),
    (501, 62),
    (502, 95),
    (503, 33),
    (504, 70),
    (505, 12),
    (506, 53),
    (507, 96),
    (508, 44),
    (509, 91),
    (510, 43),
    (511, 94),
    (512, 50),
    (513, 8),
    (514, 65),
    (515, 27),
    (516, 88),
    (517, 54),
    (518, 22),
    (519, 89),
    (520, 61),
    (521, 35),
    (522, 11),
    (523, 86),
    (524, 66),
    (525, 48),
    (526, 32),
    (527, 18),
    (528, 6),
    (529, 93),
    (530, 85),
    (531, 79),
    (532, 75),
    (533, 73),
    (534, 73),
    (535, 75),
    (536, 79),
    (537, 85),
    (538, 93),
    (539, 6),
    (540, 18),
    (541, 32),
    (542, 48),
    (543, 66),
    (544, 86),
    (545, 11),
    (546, 35),
    (547, 61),
    (548, 89),
    (549, 22),
    (550, 54),
    (551, 88),
    (552, 27),
    (553, 65),
    (554, 8),
    (555, 50),
    (556, 94),
    (557, 43),
    (558, 91),
    (559, 44),
    (560, 96),
    (561, 53),
    (562, 12),
    (563, 70),
    (564, 33),
    (565, 95),
    (566, 62),
    (567, 31),
    (568, 2),
    (569, 72),
    (570, 47),
    (571, 24),
    (572, 3),
    (573, 81),
    (574, 64),
    (575, 49),
    (576, 36),
    (577, 25),
    (578, 16),
    (579, 9),
    (580, 4),
    (581, 1),
    (582, 0),
    (583, 1),
    (584, 4),
    (585, 9),
    (586, 16),
    (587, 25),
    (588, 36),
    (589, 49),
    (590, 64),
    (591, 81),
    (592, 3),
    (593, 24),
    (594, 47),
    (595, 72),
    (596, 2),
    (597, 31),
    (598, 62),
    (599, 95),
    (600, 33),
    (601, 70),
    (602, 12),
    (603, 53),
    (604, 96),
    (605, 44),
    (606, 91),
    (607, 43),
    (608, 94),
    (609, 50),
    (610, 8),
    (611, 65),
    (612, 27),
    (613, 88),
    (614, 54),
    (615, 22),
    (616, 89),
    (617, 61),
    (618, 35),
    (619, 11),
    (620, 86),
    (621, 66),
    (622, 48),
    (623, 32),
    (624, 18),
    (625, 6),
    (626, 93),
    (627, 85),
    (628, 79),
    (629, 75),
    (630, 73),
    (631, 73),
    (632, 75),
    (633, 79),
    (634, 85),
    (635, 93),
    (636, 6),
    (637, 18),
    (638, 32),
    (639, 48),
    (640, 66),
    (641, 86),
    (642, 11),
    (643, 35),
    (644, 61),
    (645, 89),
    (646, 22),
    (647, 54),
    (648, 88),
    (649, 27),
    (650, 65),
    (651, 8),
    (652, 50),
    (653, 94),
    (654, 43),
    (655, 91),
    (656, 44),
    (657, 96),
    (658, 53),
    (659, 12),
    (660, 70),
    (661, 33),
    (662, 95),
    (663, 62),
    (664, 31),
    (665, 2),
    (666, 72),
    (667, 47),
    (668, 24),
    (669, 3),
    (670, 81),
    (671, 64),
    (672, 49),
    (673, 36),
    (674, 25),
    (675, 16),
    (676, 9),
    (677, 4),
    (678, 1),
    (679, 0),
    (680, 1),
    (681, 4),
    (682, 9),
    (683, 16),
    (684, 25),
    (685, 36),
    (686, 49),
    (687, 64),
    (688, 81),
    (689, 3),
    (690, 24),
    (691, 47),
    (692, 72),
    (693, 2),
    (694, 31),
    (695, 62),
    (696, 95),
    (697, 33),
    (698, 70),
    (699, 12),
    (700, 53),
    (701, 96),
    (702, 44),
    (703, 91),
    (704, 43),
    (705, 94),
    (706, 50),
    (707, 8),
    (708, 65),
    (709, 27),
    (710, 88),
    (711, 54),
    (712, 22),
    (713, 89),
    (714, 61),
    (715, 35),
    (716, 11),
    (717, 86),
    (718, 66),
    (719, 48),
    (720, 32),
    (721, 18),
    (722, 6),
    (723, 93),
    (724, 85),
    (725, 79),
    (726, 75),
    (727, 73),
    (728, 73),
    (729, 75),
    (730, 79),
    (731, 85),
    (732, 93),
    (733, 6),
    (734, 18),
    (735, 32),
    (736, 48),
    (737, 66),
    (738, 86),
    (739, 11),
    (740, 35),
    (741, 61),
    (742, 89),
    (743, 22),
    (744, 54),
    (745, 88),
    (746, 27),
    (747, 65),
    (748, 8),
    (749, 50),
    (750, 94),
    (751, 43),
    (752, 91),
    (753, 44),
    (754, 96),
    (755, 53),
    (756, 12),
    (757, 70),
    (758, 33),
    (759, 95),
    (760, 62),
    (761, 31),
    (762, 2),
    (763, 72),
    (764, 47),
    (765, 24),
    (766, 3),
    (767, 81),
    (768, 64),
    (769, 49),
    (770, 36),
    (771, 25),
    (772, 16),
    (773, 9),
    (774, 4),
    (775, 1),
    (776, 0),
    (777, 1),
    (778, 4),
    (779, 9),
    (780, 16),
    (781, 25),
    (782, 36),
    (783, 49),
    (784, 64),
    (785, 81),
    (786, 3),
    (787, 24),
    (788, 47),
    (789, 72),
    (790, 2),
    (791, 31),
    (792, 62),
    (793, 95),
    (794, 33),
    (795, 70),
    (796, 12),
    (797, 53),
    (798, 96),
    (799, 44),
    (800, 91),
    (801, 43),
    (802, 94),
    (803, 50),
    (804, 8),
    (805, 65),
    (806, 27),
    (807, 88),
    (808, 54),
    (809, 22),
    (810, 89),
    (811, 61),
    (812, 35),
    (813, 11),
    (814, 86),
    (815, 66),
    (816, 48),
    (817, 32),
    (818, 18),
    (819, 6),
    (820, 93),
    (821, 85),
    (822, 79),
    (823, 75),
    (824, 73),
    (825, 73),
    (826, 75),
    (827, 79),
    (828, 85),
    (829, 93),
    (830, 6),
    (831, 18),
    (832, 32),
    (833, 48),
    (834, 66),
    (835, 86),
    (836, 11),
    (837, 35),
    (838, 61),
    (839, 89),
    (840, 22),
    (841, 54),
    (842, 88),
    (843, 27),
    (844, 65),
    (845, 8),
    (846, 50),
    (847, 94),
    (848, 43),
    (849, 91),
    (850, 44),
    (851, 96),
    (852, 53),
    (853, 12),
    (854, 70),
    (855, 33),
    (856, 95),
    (857, 62),
    (858, 31),
    (859, 2),
    (860, 72),
    (861, 47),
    (862, 24),
    (863, 3),
    (864, 81),
    (865, 64),
    (866, 49),
    (867, 36),
    (868, 25),
    (869, 16),
    (870, 9),
    (871, 4),
    (872, 1),
    (873, 0),
    (874, 1),
    (875, 4),
    (876, 9),
    (877, 16),
    (878, 25),
    (879, 36),
    (880, 49),
    (881, 64),
    (882, 81),
    (883, 3),
    (884, 24),
    (885, 47),
    (886, 72),
    (887, 2),
    (888, 31),
    (889, 62),
    (890, 95),
    (891, 33),
    (892, 70),
    (893, 12),
    (894, 53),
    (895, 96),
    (896, 44),
    (897, 91),
    (898, 43),
    (899, 94),
    (900, 50),
    (901, 8),
    (902, 65),
    (903, 27),
    (904, 88),
    (905, 54),
    (906, 22),
    (907, 89),
    (908, 61),
    (909, 35),
    (910, 11),
    (911, 86),
    (912, 66),
    (913, 48),
    (914, 32),
    (915, 18),
    (916, 6),
    (917, 93),
    (918, 85),
    (919, 79),
    (920, 75),
    (921, 73),
    (922, 73),
    (923, 75),
    (924, 79),
    (925, 85),
    (926, 93),
    (927, 6),
    (928, 18),
    (929, 32),
    (930, 48),
    (931, 66),
    (932, 86),
    (933, 11),
    (934, 35),
    (935, 61),
    (936, 89),
    (937, 22),
    (938, 54),
    (939, 88),
    (940, 27),
    (941, 65),
    (942, 8),
    (943, 50),
    (944, 94),
    (945, 43),
    (946, 91),
    (947, 44),
    (948, 96),
    (949, 53),
    (950, 12),
    (951, 70),
    (952, 33),
    (953, 95),
    (954, 62),
    (955, 31),
    (956, 2),
    (957, 72),
    (958, 47),
    (959, 24),
    (960, 3),
    (961, 81),
    (962, 64),
    (963, 49),
    (964, 36),
    (965, 25),
    (966, 16),
    (967, 9),
    (968, 4),
    (969, 1),
    (970, 0),
    (971, 1),
    (972, 4),
    (973, 9),
    (974, 16),
    (975, 25),
    (976, 36),
    (977, 49),
    (978, 64),
    (979, 81),
    (980, 3),
    (981, 24),
    (982, 47),
    (983, 72),
    (984, 2),
    (985, 31),
    (986, 62),
    (987, 95),
    (988, 33),
    (989, 70),
    (990, 12),
    (991, 53),
    (992, 96),
    (993, 44),
    (994, 91),
    (995, 43),
    (996, 94),
    (997, 50),
    (998, 8),
    (999, 65),
    (1000, 27),
    (1001, 88),
    (1002, 54),
    (1003, 22),
    (1004, 89),
    (1005, 61),
    (1006, 35),
    (1007, 11),
    (1008, 86),
    (1009, 66),
    (1010, 48),
    (1011, 32),
    (1012, 18),
    (1013, 6),
    (1014, 93),
    (1015, 85),
    (1016, 79),
    (1017, 75),
    (1018, 73),
    (1019, 73),
    (1020, 75),
    (1021, 79),
    (1022, 85),
    (1023, 93),
    (1024, 6),
    (1025, 18),
    (1026, 32),
    (1027, 48),
    (1028, 66),
    (1029, 86),
    (1030, 11),
    (1031, 35),
    (1032, 61),
    (1033, 89),
    (1034, 22),
    (1035, 54),
    (1036, 88),
    (1037, 27),
    (1038, 65),
    (1039, 8),
    (1040, 50),
    (1041, 94),
    (1042, 43),
    (1043, 91),
    (1044, 44),
    (1045, 96),
    (1046, 53),
    (1047, 12),
    (1048, 70),
    (1049, 33),
    (1050, 95),
    (1051, 62),
    (1052, 31),
    (1053, 2),
    (1054, 72),
    (1055, 47),
    (1056, 24),
    (1057, 3),
    (1058, 81),
    (1059, 64),
    (1060, 49),
    (1061, 36),
    (1062, 25),
    (1063, 16),
    (1064, 9),
    (1065, 4),
    (1066, 1),
    (1067, 0),
    (1068, 1),
    (1069, 4),
    (1070, 9),
    (1071, 16),
    (1072, 25),
    (1073, 36),
    (1074, 49),
    (1075, 64),
    (1076, 81),
    (1077, 3),
    (1078, 24),
    (1079, 47),
    (1080, 72),
    (1081, 2),
    (1082, 31),
    (1083, 62),
    (1084, 95),
    (1085, 33),
    (1086, 70),
    (1087, 12),
    (1088, 53),
    (1089, 96),
    (1090, 44),
    (1091, 91),
    (1092, 43),
    (1093, 94),
    (1094, 50),
    (1095, 8),
    (1096, 65),
    (1097, 27),
    (1098, 88),
    (1099, 54),
    (1100, 22),
    (1101, 89),
    (1102, 61),
    (1103, 35),
    (1104, 11),
    (1105, 86),
    (1106, 66),
    (1107, 48),
    (1108, 32),
    (1109, 18),
    (1110, 6),
    (1111, 93),
    (1112, 85),
    (1113, 79),
    (1114, 75),
    (1115, 73),
    (1116, 73),
    (1117, 75),
    (1118, 79),
    (1119, 85),
    (1120, 93),
    (1121, 6),
    (1122, 18),
    (1123, 32),
    (1124, 48),
    (1125, 66),
    (1126, 86),
    (1127, 11),
    (1128, 35),
    (1129, 61),
    (1130, 89),
    (1131, 22),
    (1132, 54),
    (1133, 88),
    (1134, 27),
    (1135, 65),
    (1136, 8),
    (1137, 50),
    (1138, 94),
    (1139, 43),
    (1140, 91),
    (1141, 44),
    (1142, 96),
    (1143, 53),
    (1144, 12),
    (1145, 70),
    (1146, 33),
    (1147, 95),
    (1148, 62),
    (1149, 31),
    (1150, 2),
    (1151, 72),
    (1152, 47),
    (1153, 24),
    (1154, 3),
    (1155, 81),
    (1156, 64),
    (1157, 49),
    (1158, 36),
    (1159, 25),
    (1160, 16),
    (1161, 9),
    (1162, 4),
    (1163, 1),
    (1164, 0),
    (1165, 1),
    (1166, 4),
    (1167, 9),
    (1168, 16),
    (1169, 25),
    (1170, 36),
    (1171, 49),
    (1172, 64),
    (1173, 81),
    (1174, 3),
    (1175, 24),
    (1176, 47),
    (1177, 72),
    (1178, 2),
    (1179, 31),
    (1180, 62),
    (1181, 95),
    (1182, 33),
    (1183, 70),
    (1184, 12),
    (1185, 53),
    (1186, 96),
    (1187, 44),
    (1188, 91),
    (1189, 43),
    (1190, 94),
    (1191, 50),
    (1192, 8),
    (1193, 65),
    (1194, 27),
    (1195, 88),
    (1196, 54),
    (1197, 22),
    (1198, 89),
    (1199, 61),
]
